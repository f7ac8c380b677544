"""Polychromaticity checks and the executable doubling argument.

:func:`witness_extract` takes a large range missing a colour of a refined
2k-coloring and pushes it down one level: either the split of the parent
class failed on at least ``c`` of its points, or a smaller homothet inside
the range misses a parent colour on at least ``t`` points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .coloring import Coloring
from .geometry import Homothet, Point, Quadrant
from .ranges import PointSet, RangeCatalog, range_of, worst_missing


class PreconditionError(ValueError):
    """Inputs do not satisfy an operation's stated preconditions."""


class CoverPreconditionError(PreconditionError):
    def __init__(self, r: Point, q: Point):
        super().__init__(f"obstruction {r} dominates query point {q}")
        self.r = r
        self.q = q


class InvariantError(RuntimeError):
    """An extraction step that the argument guarantees has failed."""


@dataclass(frozen=True)
class Violation:
    homothet: Homothet
    missing_color: int
    size: int
    level: str = "coloring"  # "coloring", "parent" or "split"


def verify(catalog: RangeCatalog, coloring: Coloring, m: int) -> Violation | None:
    """``None`` when every range with at least ``m`` points has all colours.

    Otherwise the largest violating range, smallest missing colour on ties.
    """
    size, row, missing = worst_missing(catalog, coloring.colors, coloring.k)
    if row < 0 or size < m:
        return None
    return Violation(catalog.homothet(row), missing, size)


def empirical_threshold(catalog: RangeCatalog, coloring: Coloring) -> int:
    size, _, _ = worst_missing(catalog, coloring.colors, coloring.k)
    return size + 1


def _maxima(R: Sequence[Point]) -> list[Point]:
    """Dominance-maximal points of ``R``, by increasing x (so decreasing y)."""
    stair: list[Point] = []
    for r in sorted(set(R), key=lambda p: (-p.x, -p.y)):
        if not stair or r.y > stair[-1].y:
            stair.append(r)
    stair.reverse()
    return stair


def quadrant_cover(Q: Sequence[Point], R: Sequence[Point], tighten: bool = True) -> list[Quadrant]:
    """At most ``|R| + 1`` quadrants covering ``Q`` and avoiding ``R``.

    The corners where a quadrant may sit without meeting ``R`` form an
    upward-closed region bounded by the staircase of ``R``'s maximal points
    ``m_1..m_p``; its concave corners are ``(-inf, m_1.y+)``,
    ``(m_j.x+, m_{j+1}.y+)`` and ``(m_p.x+, -inf)``, with ``+`` a strict
    side.  With ``tighten`` each used corner is moved up to the smallest
    closed corner over the query points it covers, and unused corners are
    dropped.
    """
    for q in Q:
        for r in R:
            if r.dominates(q):
                raise CoverPreconditionError(r, q)
    if not Q:
        return []
    lo_x = min(q.x for q in Q)
    lo_y = min(q.y for q in Q)
    stair = _maxima(R)
    if not stair:
        raw = [Quadrant(lo_x, lo_y)]
    else:
        raw = [Quadrant(lo_x, stair[0].y, False, True)]
        raw += [Quadrant(stair[j].x, stair[j + 1].y, True, True) for j in range(len(stair) - 1)]
        raw.append(Quadrant(stair[-1].x, lo_y, True, False))
    if not tighten:
        return raw
    out = []
    for quad in raw:
        got = [q for q in Q if quad.contains(q)]
        if got:
            out.append(Quadrant(min(q.x for q in got), min(q.y for q in got)))
    return out


@dataclass(frozen=True)
class WitnessTrace:
    violating: Homothet
    missing: int
    parent_color: int
    c: int
    t: int
    Q: tuple[int, ...]
    R: tuple[int, ...]
    cover: tuple[Quadrant, ...]
    derived: Violation
    members: tuple[int, ...] = field(default=())  # points of the violating range


def _extraction_order(points: PointSet, idx: Sequence[int], parent: Sequence[int], i: int) -> list[int]:
    # Class-i points go first among equal sums: the cap through the last
    # point of a block then cannot pick up a class-i point on the same line.
    return sorted(idx, key=lambda j: (points[j].x + points[j].y, parent[j] != i,
                                      points[j].x, points[j].y, j))


def witness_extract(points: PointSet, phi: Coloring, phi2: Coloring, viol: Violation,
                    c: int, t: int) -> WitnessTrace:
    """Replay the doubling argument on a concrete violation of ``phi2``.

    ``viol`` is a homothet with at least ``c*c*t`` points that misses colour
    ``i'`` of ``phi2``, a refinement of ``phi``.  The derived violation is
    either a monochromatic split of class ``i`` on at least ``c`` of its
    points, or a homothet inside ``viol`` with at least ``t`` points and no
    point of class ``i``.
    """
    if c < 1 or t < 1:
        raise PreconditionError("c and t must be positive")
    if not phi2.refines(phi) or len(phi) != len(points):
        raise PreconditionError("phi2 must refine phi over the same point set")
    H = viol.homothet
    inside = [j for j in range(len(points)) if H.a <= points[j].x and H.b <= points[j].y
              and points[j].x + points[j].y <= H.s]
    if len(inside) < c * c * t:
        raise PreconditionError(f"violating homothet has {len(inside)} < c^2 t = {c * c * t} points")
    missing = viol.missing_color
    if not 0 <= missing < phi2.k or any(phi2.colors[j] == missing for j in inside):
        raise PreconditionError(f"colour {missing} is present in the violating homothet")
    i = missing // 2
    parent = phi.colors
    cls = [j for j in inside if parent[j] == i]

    if len(cls) >= c:
        derived = Violation(Homothet.minimal(points[j] for j in cls), missing, len(cls), "split")
        return WitnessTrace(H, missing, i, c, t, (), (), (), derived, tuple(inside))

    order = _extraction_order(points, inside, parent, i)
    blocks: list[tuple[int, int]] = []  # [start, end) positions of class-i-free runs
    start = 0
    for pos, j in enumerate(order + [None]):
        if j is None or parent[j] == i:
            if pos > start:
                blocks.append((start, pos))
            start = pos + 1
    need = -(-(len(inside) - len(cls)) // (len(cls) + 1))
    if not c * t <= -(-(c * c * t - c + 1) // c) <= need:
        raise InvariantError("pigeonhole bound on the longest block failed")
    lo, hi = max(blocks, key=lambda b: (b[1] - b[0], -b[0]))
    if hi - lo < c * t:
        raise InvariantError(f"longest class-{i}-free block has {hi - lo} < c t = {c * t} points")
    Q = order[lo:hi]
    R = [j for j in order[:lo] if parent[j] == i]
    try:
        cover = quadrant_cover([points[j] for j in Q], [points[j] for j in R])
    except CoverPreconditionError as exc:
        raise InvariantError(f"quadrant cover impossible: {exc}") from exc
    if len(cover) > len(R) + 1:
        raise InvariantError("quadrant cover uses more than |R| + 1 quadrants")

    def covered(quad):
        return [j for j in Q if quad.contains(points[j])]

    best = max(cover, key=lambda quad: (len(covered(quad)), -quad.a, -quad.b))
    chosen = covered(best)
    if len(chosen) < t:
        raise InvariantError(f"best quadrant holds {len(chosen)} < t = {t} points")
    last = points[Q[-1]]
    D = Homothet(min(points[j].x for j in chosen), min(points[j].y for j in chosen), last.x + last.y)
    got = range_of(D, points)
    size = got.bit_count()
    if any(got >> j & 1 for j in range(len(points)) if parent[j] == i) or size < t:
        raise InvariantError("derived homothet is not a violation of the parent coloring")
    if not D.issubset(H):
        raise InvariantError("derived homothet escapes the violating homothet")
    derived = Violation(D, i, size, "parent")
    return WitnessTrace(H, missing, i, c, t, tuple(Q), tuple(R), tuple(cover), derived, tuple(inside))


def check_derived(points: PointSet, phi: Coloring, phi2: Coloring, trace: WitnessTrace) -> bool:
    """Independent check that ``trace.derived`` really is a violation."""
    d = trace.derived
    inside = [j for j in range(len(points)) if d.homothet.a <= points[j].x
              and d.homothet.b <= points[j].y and points[j].x + points[j].y <= d.homothet.s]
    if not d.homothet.issubset(trace.violating):
        return False
    if d.level == "split":
        cls = [j for j in inside if phi.colors[j] == trace.parent_color]
        return (len(cls) >= trace.c and len(cls) == d.size
                and len({phi2.colors[j] for j in cls}) == 1)
    return (len(inside) >= trace.t and len(inside) == d.size
            and all(phi.colors[j] != d.missing_color for j in inside))
