"""Flat-file formats: point files, colorings, witness traces.

Point files are UTF-8, one ``x y`` pair per line with exact rationals
(``num/den`` or bare integers).  ``#`` starts a comment; comments of the
form ``# key: value`` carry instance metadata (``triangle``, ``generator``,
``seed``, ``n``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .coloring import Coloring
from .geometry import (AffineMap, Homothet, Point, Quadrant, Triangle, format_scalar,
                       format_triangle, parse_scalar, parse_triangle)
from .ranges import PointSet
from .verify import Violation, WitnessTrace


class FormatError(ValueError):
    pass


@dataclass
class Instance:
    triangle: Triangle
    points: PointSet
    metadata: dict[str, str] = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (self.triangle == other.triangle and self.points == other.points
                and self.metadata == other.metadata)


META_KEYS = ("generator", "seed", "n", "triangle")


def dump_points(inst: Instance) -> str:
    lines = [f"# triangle: {format_triangle(inst.triangle)}"]
    for key, value in inst.metadata.items():
        lines.append(f"# {key}: {value}")
    for p in inst.points:
        lines.append(f"{format_scalar(p.x)} {format_scalar(p.y)}")
    return "\n".join(lines) + "\n"


def load_points(text: str) -> Instance:
    pts = []
    meta: dict[str, str] = {}
    triangle = Triangle.unit()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, sep, value = line[1:].partition(":")
            key = key.strip()
            if sep and key and " " not in key:
                if key == "triangle":
                    try:
                        triangle = parse_triangle(value.strip())
                    except ValueError as exc:
                        raise FormatError(f"line {line_no}: {exc}") from exc
                else:
                    meta[key] = value.strip()
            continue
        body = line.split("#", 1)[0].split()
        if len(body) != 2:
            raise FormatError(f"line {line_no}: expected 'x y', got {raw!r}")
        try:
            pts.append(Point(parse_scalar(body[0]), parse_scalar(body[1])))
        except ValueError as exc:
            raise FormatError(f"line {line_no}: {exc}") from exc
    return Instance(triangle, PointSet(pts), meta)


def read_instance(path: str) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return load_points(fh.read())


def write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        import sys
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def dump_coloring(coloring: Coloring) -> str:
    return json.dumps({"k": coloring.k, "colors": list(coloring.colors)}) + "\n"


def load_coloring(text: str) -> Coloring:
    try:
        doc = json.loads(text)
        return Coloring(int(doc["k"]), [int(c) for c in doc["colors"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad coloring document: {exc}") from exc


def _pt(p: Point) -> list[str]:
    return [format_scalar(p.x), format_scalar(p.y)]


def homothet_doc(H: Homothet, to_world: AffineMap | None = None) -> dict[str, Any]:
    doc: dict[str, Any] = {"a": format_scalar(H.a), "b": format_scalar(H.b), "s": format_scalar(H.s)}
    if to_world is not None:
        doc["world"] = [_pt(to_world(v)) for v in H.vertices()]
    return doc


def _homothet_from(doc) -> Homothet:
    return Homothet(parse_scalar(doc["a"]), parse_scalar(doc["b"]), parse_scalar(doc["s"]))


def violation_doc(v: Violation, to_world: AffineMap | None = None) -> dict[str, Any]:
    return {"homothet": homothet_doc(v.homothet, to_world), "missing_color": v.missing_color,
            "size": v.size, "level": v.level}


def violation_from(doc) -> Violation:
    return Violation(_homothet_from(doc["homothet"]), int(doc["missing_color"]),
                     int(doc["size"]), doc.get("level", "coloring"))


def dump_trace(trace: WitnessTrace, to_world: AffineMap | None = None) -> str:
    doc = {
        "violating": homothet_doc(trace.violating, to_world),
        "missing": trace.missing,
        "parent_color": trace.parent_color,
        "c": trace.c,
        "t": trace.t,
        "members": list(trace.members),
        "Q": list(trace.Q),
        "R": list(trace.R),
        "cover": [{"a": format_scalar(q.a), "b": format_scalar(q.b),
                   "a_open": q.a_open, "b_open": q.b_open} for q in trace.cover],
        "derived": violation_doc(trace.derived, to_world),
    }
    return json.dumps(doc, indent=2) + "\n"


def load_trace(text: str) -> WitnessTrace:
    doc = json.loads(text)
    return WitnessTrace(
        _homothet_from(doc["violating"]), int(doc["missing"]), int(doc["parent_color"]),
        int(doc["c"]), int(doc["t"]), tuple(doc["Q"]), tuple(doc["R"]),
        tuple(Quadrant(parse_scalar(q["a"]), parse_scalar(q["b"]), q["a_open"], q["b_open"])
              for q in doc["cover"]),
        violation_from(doc["derived"]), tuple(doc["members"]),
    )
