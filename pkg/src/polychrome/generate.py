"""Instance generators and the small-instance search for p(2) >= 4."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .coloring import EXACT_CUTOFF, two_color
from .geometry import Point, Triangle
from .io import Instance
from .ranges import PointSet, enumerate_ranges

KINDS = ("uniform-random", "grid", "collinear-diagonal", "staircase-adversarial")


class UnknownKindError(ValueError):
    pass


def _uniform(n: int, rng: random.Random, den: int) -> list[Point]:
    if n > (den + 1) * (den + 2) // 2:
        raise ValueError(f"cannot place {n} distinct points on a lattice of step 1/{den}")
    seen: set[tuple[int, int]] = set()
    pts = []
    while len(pts) < n:
        u, v = rng.randint(0, den), rng.randint(0, den)
        if u + v <= den and (u, v) not in seen:
            seen.add((u, v))
            pts.append(Point(Fraction(u, den), Fraction(v, den)))
    return pts


def _grid(n: int) -> list[Point]:
    side = math.isqrt(n - 1) + 1 if n else 0
    step = Fraction(1, 2 * (side - 1)) if side > 1 else Fraction(0)
    cells = [(i, j) for j in range(side) for i in range(side)][:n]
    return [Point(i * step, j * step) for i, j in cells]


def _diagonal(n: int) -> list[Point]:
    if n == 1:
        return [Point(Fraction(1, 2), Fraction(1, 2))]
    return [Point(Fraction(i, n - 1), 1 - Fraction(i, n - 1)) for i in range(n)]


def _staircase(n: int, rng: random.Random, den: int) -> list[Point]:
    half = den // 2
    if n > half + 1:
        raise ValueError(f"cannot place {n} antichain points with denominator {den}")
    xs = sorted(rng.sample(range(half + 1), n))
    ys = sorted(rng.sample(range(half + 1), n), reverse=True)
    return [Point(Fraction(x, den), Fraction(y, den)) for x, y in zip(xs, ys)]


def generate(kind: str, n: int, seed: int = 0, params: dict[str, Any] | None = None) -> Instance:
    """Deterministic instance of ``n`` points inside the unit triangle.

    ``grid`` is a square lattice with step ``1/(2(side-1))``, filled row by
    row; ``collinear-diagonal`` lies on ``x + y = 1``; ``staircase-adversarial``
    is a random dominance antichain.  Random kinds draw distinct lattice
    points of step ``1/denominator`` (``params``, default 10000).
    """
    params = params or {}
    if n < 0:
        raise ValueError("n must be non-negative")
    den = int(params.get("denominator", 10_000))
    rng = random.Random(seed)
    if kind == "uniform-random":
        pts = _uniform(n, rng, den)
    elif kind == "grid":
        pts = _grid(n)
    elif kind == "collinear-diagonal":
        pts = _diagonal(n)
    elif kind == "staircase-adversarial":
        pts = _staircase(n, rng, den)
    else:
        raise UnknownKindError(f"unknown generator {kind!r}; choose from {KINDS}")
    meta = {"generator": kind, "seed": str(seed), "n": str(n)}
    return Instance(Triangle.unit(), PointSet(pts), meta)


def optimal_two_color_threshold(points: PointSet, seed: int = 0) -> tuple[int, dict[int, int]]:
    catalog = enumerate_ranges(points)
    colors, achieved = two_color(list(range(len(points))), catalog, points, "exact", seed)
    return achieved, colors


@dataclass
class SearchResult:
    instance: Instance | None
    threshold: int
    tried: int
    colors: dict[int, int] | None = None

    @property
    def found(self) -> bool:
        return self.threshold >= 4


def search_p2_lower_bound(n_max: int = 12, budget: int = 2000, seed: int = 0,
                          target: int = 4) -> SearchResult:
    """Look for a point set whose optimal 2-coloring threshold reaches ``target``.

    Structured families are tried at every size up to ``n_max``, then seeded
    random sets of size ``n_max``.  A hit is shrunk by deleting points while
    the optimal threshold stays at ``target``.  Stops at the first hit or
    after ``budget`` instances and reports the best threshold seen.
    """
    if n_max > EXACT_CUTOFF:
        raise ValueError(f"n_max must be at most {EXACT_CUTOFF}")
    rng = random.Random(seed)

    def candidates():
        for n in range(1, n_max + 1):
            yield generate("grid", n)
            yield generate("collinear-diagonal", n)
        while True:
            s = rng.randrange(2**31)
            yield generate("uniform-random", n_max, s, {"denominator": 64})
            if n_max <= 33:
                yield generate("staircase-adversarial", n_max, s, {"denominator": 64})

    best = SearchResult(None, 0, 0)
    for tried, inst in enumerate(candidates(), start=1):
        if tried > budget:
            break
        thr, colors = optimal_two_color_threshold(inst.points)
        if thr > best.threshold:
            best = SearchResult(inst, thr, tried, colors)
        if thr >= target:
            best.instance = shrink(inst, target)
            best.threshold, best.colors = optimal_two_color_threshold(best.instance.points)
            break
    best.tried = min(tried, budget)
    return best


def shrink(inst: Instance, target: int) -> Instance:
    """Delete points one at a time while the optimal threshold stays >= target."""
    pts = list(inst.points)
    changed = True
    while changed:
        changed = False
        for j in range(len(pts)):
            trial = pts[:j] + pts[j + 1:]
            if optimal_two_color_threshold(PointSet(trial))[0] >= target:
                pts = trial
                changed = True
                break
    meta = dict(inst.metadata, n=str(len(pts)))
    return Instance(inst.triangle, PointSet(pts), meta)
