"""Batch experiments: empirical thresholds against the theoretical bound."""

from __future__ import annotations

import csv
import io
import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields

from .coloring import k_color, theoretical_threshold
from .generate import generate

COLUMNS = ("generator", "n", "k", "strategy", "seed", "empirical", "theoretical",
           "parent_threshold", "base_threshold", "sound", "error")


@dataclass
class Row:
    generator: str
    n: int
    k: int
    strategy: str
    seed: int
    empirical: int = 0
    theoretical: int = 0
    parent_threshold: int = 0
    base_threshold: int = 0
    sound: bool = True
    error: str = ""
    wall_ms: float = 0.0


@dataclass
class ExperimentReport:
    rows: list[Row]

    def to_csv(self, timing: bool = False) -> str:
        cols = COLUMNS + (("wall_ms",) if timing else ())
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols)
        for row in self.rows:
            d = asdict(row)
            d["sound"] = int(row.sound)
            d["wall_ms"] = f"{row.wall_ms:.1f}"
            writer.writerow([d[c] for c in cols])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "ExperimentReport":
        reader = csv.DictReader(io.StringIO(text))
        types = {f.name: f.type for f in fields(Row)}
        rows = []
        for rec in reader:
            kw = {}
            for name, value in rec.items():
                t = types[name]
                if t == "int":
                    kw[name] = int(value)
                elif t == "bool":
                    kw[name] = bool(int(value))
                elif t == "float":
                    kw[name] = float(value)
                else:
                    kw[name] = value
            rows.append(Row(**kw))
        return cls(rows)


def expand(config: dict) -> list[Row]:
    """Rows in canonical order: generator, n, k, strategy, then seed."""
    if not config:
        return []
    combos = itertools.product(
        config.get("generators", ["uniform-random"]),
        config.get("sizes", []),
        config.get("ks", [2]),
        config.get("strategies", ["exact"]),
        config.get("seeds", [0]),
    )
    return [Row(g, int(n), int(k), s, int(seed)) for g, n, k, s, seed in combos]


def run_row(row: Row) -> Row:
    start = time.perf_counter()
    try:
        inst = generate(row.generator, row.n, row.seed)
        res = k_color(list(inst.points), inst.triangle, row.k, row.strategy, row.seed)
        row.empirical = res.empirical.threshold
        row.theoretical = theoretical_threshold(row.k)
        last = res.levels[-1]
        row.parent_threshold = last.parent_threshold or 0
        row.base_threshold = last.base_threshold if last.achieved else 0
        row.sound = all(level.sound for level in res.levels)
    except Exception as exc:  # per-row failures are recorded, the run goes on
        row.error = f"{type(exc).__name__}: {exc}".replace(",", ";").replace("\n", " ")
    row.wall_ms = (time.perf_counter() - start) * 1000
    return row


def run_experiment(config: dict, jobs: int = 1) -> ExperimentReport:
    rows = expand(config)
    if jobs > 1 and len(rows) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(run_row, rows))
    else:
        rows = [run_row(r) for r in rows]
    return ExperimentReport(rows)
