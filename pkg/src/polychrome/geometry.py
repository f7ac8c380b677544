"""Exact rational planar primitives.

Every coordinate is a :class:`fractions.Fraction`; no predicate in this
module touches floating point.  After canonicalization the reference
triangle is the unit right triangle with vertices (0,0), (1,0), (0,1), and
its positive homothets are the regions ``{x >= a, y >= b, x + y <= s}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Union

Scalar = Fraction
Number = Union[int, Fraction, str]


class DegenerateTriangleError(ValueError):
    """Raised for a triangle whose vertices are collinear."""


def as_scalar(value: Number) -> Fraction:
    """Coerce ``value`` to an exact rational.

    Floats are rejected: they cannot be trusted to carry the value the
    caller meant.
    """
    if isinstance(value, float):
        raise TypeError("floating point coordinates are not accepted; use Fraction or 'num/den'")
    return Fraction(value)


@total_ordering
@dataclass(frozen=True, eq=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", as_scalar(self.x))
        object.__setattr__(self, "y", as_scalar(self.y))

    def __lt__(self, other: "Point") -> bool:
        return sweep_key(self) < sweep_key(other)

    def __iter__(self):
        yield self.x
        yield self.y

    def dominates(self, other: "Point") -> bool:
        """True when this point is >= ``other`` in both coordinates."""
        return self.x >= other.x and self.y >= other.y


def sweep_key(p: Point) -> tuple[Fraction, Fraction, Fraction]:
    """Sort key sweeping the plane with a line of slope -1.

    Ties on ``x + y`` are broken by ``x`` and then ``y``.
    """
    return (p.x + p.y, p.x, p.y)


def orientation(p: Point, q: Point, r: Point) -> Fraction:
    """Twice the signed area of the triangle ``pqr``."""
    return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)


@dataclass(frozen=True)
class Triangle:
    v0: Point
    v1: Point
    v2: Point

    def __post_init__(self):
        if orientation(self.v0, self.v1, self.v2) == 0:
            raise DegenerateTriangleError(
                f"collinear vertices {tuple(self.vertices)!r}"
            )

    @property
    def vertices(self) -> tuple[Point, Point, Point]:
        return (self.v0, self.v1, self.v2)

    @classmethod
    def unit(cls) -> "Triangle":
        return cls(Point(0, 0), Point(1, 0), Point(0, 1))


@dataclass(frozen=True)
class AffineMap:
    """``p -> L p + t`` with ``L = [[m00, m01], [m10, m11]]``."""

    m00: Fraction
    m01: Fraction
    m10: Fraction
    m11: Fraction
    tx: Fraction = Fraction(0)
    ty: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("m00", "m01", "m10", "m11", "tx", "ty"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        if self.det == 0:
            raise ValueError("affine map has a singular linear part")

    @classmethod
    def identity(cls) -> "AffineMap":
        return cls(1, 0, 0, 1)

    @property
    def det(self) -> Fraction:
        return self.m00 * self.m11 - self.m01 * self.m10

    def __call__(self, p: Point) -> Point:
        return Point(
            self.m00 * p.x + self.m01 * p.y + self.tx,
            self.m10 * p.x + self.m11 * p.y + self.ty,
        )

    def apply_all(self, points: Iterable[Point]) -> list[Point]:
        return [self(p) for p in points]

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """Return ``self ∘ inner`` (apply ``inner`` first)."""
        return AffineMap(
            self.m00 * inner.m00 + self.m01 * inner.m10,
            self.m00 * inner.m01 + self.m01 * inner.m11,
            self.m10 * inner.m00 + self.m11 * inner.m10,
            self.m10 * inner.m01 + self.m11 * inner.m11,
            self.m00 * inner.tx + self.m01 * inner.ty + self.tx,
            self.m10 * inner.tx + self.m11 * inner.ty + self.ty,
        )

    def inverse(self) -> "AffineMap":
        d = self.det
        i00, i01 = self.m11 / d, -self.m01 / d
        i10, i11 = -self.m10 / d, self.m00 / d
        return AffineMap(
            i00, i01, i10, i11,
            -(i00 * self.tx + i01 * self.ty),
            -(i10 * self.tx + i11 * self.ty),
        )

    def is_identity(self) -> bool:
        return self == AffineMap.identity()


def canonical_map(T: Triangle) -> AffineMap:
    """The affine map sending ``(v0, v1, v2)`` to ``(0,0), (1,0), (0,1)``.

    The vertex correspondence follows the order the vertices are given in,
    so transforming a triangle's vertex list by any affine map keeps the
    canonical image of every point unchanged.
    """
    e1x, e1y = T.v1.x - T.v0.x, T.v1.y - T.v0.y
    e2x, e2y = T.v2.x - T.v0.x, T.v2.y - T.v0.y
    # inverse of the matrix whose columns are the two edge vectors
    d = e1x * e2y - e2x * e1y
    if d == 0:
        raise DegenerateTriangleError("collinear vertices")
    m00, m01 = e2y / d, -e2x / d
    m10, m11 = -e1y / d, e1x / d
    return AffineMap(
        m00, m01, m10, m11,
        -(m00 * T.v0.x + m01 * T.v0.y),
        -(m10 * T.v0.x + m11 * T.v0.y),
    )


@dataclass(frozen=True)
class Homothet:
    """Closed canonical homothet ``{x >= a, y >= b, x + y <= s}``."""

    a: Fraction
    b: Fraction
    s: Fraction

    def __post_init__(self):
        for name in ("a", "b", "s"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        if self.a + self.b > self.s:
            raise ValueError(f"empty homothet: a + b > s for {self!r}")

    def __contains__(self, p: Point) -> bool:
        return contains(self, p)

    def issubset(self, other: "Homothet") -> bool:
        return self.a >= other.a and self.b >= other.b and self.s <= other.s

    @property
    def scale(self) -> Fraction:
        return self.s - self.a - self.b

    def vertices(self) -> tuple[Point, Point, Point]:
        """Corner at the right angle first, then along x, then along y."""
        return (
            Point(self.a, self.b),
            Point(self.s - self.b, self.b),
            Point(self.a, self.s - self.a),
        )

    @classmethod
    def minimal(cls, points: Iterable[Point]) -> "Homothet":
        """Smallest homothet containing every point of a nonempty set."""
        pts = list(points)
        if not pts:
            raise ValueError("minimal homothet of an empty set")
        return cls(
            min(p.x for p in pts),
            min(p.y for p in pts),
            max(p.x + p.y for p in pts),
        )


def contains(H: Homothet, p: Point) -> bool:
    return p.x >= H.a and p.y >= H.b and p.x + p.y <= H.s


@dataclass(frozen=True)
class Quadrant:
    """Translate of the first quadrant with corner ``(a, b)``.

    ``a_open`` / ``b_open`` make the corresponding side strict, standing in
    for a corner shifted by an infinitesimal positive amount.
    """

    a: Fraction
    b: Fraction
    a_open: bool = False
    b_open: bool = False

    def __post_init__(self):
        object.__setattr__(self, "a", as_scalar(self.a))
        object.__setattr__(self, "b", as_scalar(self.b))

    def contains(self, p: Point) -> bool:
        ok_x = p.x > self.a if self.a_open else p.x >= self.a
        ok_y = p.y > self.b if self.b_open else p.y >= self.b
        return ok_x and ok_y

    __contains__ = contains

    def cap(self, s: Number) -> Homothet:
        """Intersect with ``{x + y <= s}``; only defined for closed corners."""
        if self.a_open or self.b_open:
            raise ValueError("cannot cap a quadrant with an open side exactly")
        return Homothet(self.a, self.b, s)


def parse_scalar(text: str) -> Fraction:
    """Parse ``num/den`` or a bare integer."""
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {text!r}") from exc


def format_scalar(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_triangle(text: str) -> Triangle:
    """Parse ``"x0,y0 x1,y1 x2,y2"``."""
    parts = text.split()
    if len(parts) != 3:
        raise ValueError(f"triangle needs three vertices, got {text!r}")
    verts = []
    for part in parts:
        xs, sep, ys = part.partition(",")
        if not sep:
            raise ValueError(f"vertex must be 'x,y', got {part!r}")
        verts.append(Point(parse_scalar(xs), parse_scalar(ys)))
    return Triangle(*verts)


def format_triangle(T: Triangle) -> str:
    return " ".join(f"{format_scalar(v.x)},{format_scalar(v.y)}" for v in T.vertices)
