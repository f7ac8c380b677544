from fractions import Fraction as F

import pytest
import sympy
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from polychrome.geometry import (AffineMap, DegenerateTriangleError, Homothet, Point, Quadrant,
                                 Triangle, canonical_map, contains, format_scalar, orientation,
                                 parse_scalar, parse_triangle, sweep_key)

from conftest import points, scalars


def tri(*coords):
    return Triangle(*(Point(x, y) for x, y in coords))


triangles = st.tuples(points, points, points).filter(lambda t: orientation(*t) != 0).map(
    lambda t: Triangle(*t))


def test_canonical_map_identity():
    assert canonical_map(Triangle.unit()).is_identity()


def test_canonical_map_scaling():
    A = canonical_map(tri((0, 0), (2, 0), (0, 2)))
    assert A == AffineMap(F(1, 2), 0, 0, F(1, 2), 0, 0)


def test_canonical_map_against_linear_solve():
    T = tri((0, 0), (1, 0), (1, 1))
    m00, m01, m10, m11, tx, ty = sympy.symbols("m00 m01 m10 m11 tx ty")
    eqs = []
    for (x, y), (u, v) in zip([(0, 0), (1, 0), (1, 1)], [(0, 0), (1, 0), (0, 1)]):
        eqs += [m00 * x + m01 * y + tx - u, m10 * x + m11 * y + ty - v]
    sol = sympy.solve(eqs, [m00, m01, m10, m11, tx, ty])
    expected = AffineMap(*(F(str(sol[s])) for s in (m00, m01, m10, m11, tx, ty)))
    A = canonical_map(T)
    assert A == expected
    assert [A(v) for v in T.vertices] == [Point(0, 0), Point(1, 0), Point(0, 1)]


def test_degenerate_triangle():
    with pytest.raises(DegenerateTriangleError):
        tri((0, 0), (1, 1), (2, 2))


def test_floats_rejected():
    with pytest.raises(TypeError):
        Point(0.5, 1)


@pytest.mark.parametrize("p, inside", [((0, 0), True), ((1, 1), False),
                                       ((F(1, 2), F(1, 2)), True), ((-1, 0), False)])
def test_contains_closed(p, inside):
    assert contains(Homothet(0, 0, 1), Point(*p)) is inside


def test_empty_homothet_rejected():
    with pytest.raises(ValueError):
        Homothet(1, 1, 1)


def test_sweep_order_with_ties():
    pts = [Point(0, 3), Point(1, 1), Point(2, 0)]
    assert sorted(pts, key=sweep_key) == [Point(1, 1), Point(2, 0), Point(0, 3)]
    assert sorted([Point(5, 5)], key=sweep_key) == [Point(5, 5)]


@given(st.lists(points, unique_by=lambda p: p.x + p.y))
def test_sweep_distinct_sums_match_comparison_sort(pts):
    by_key = sorted(pts, key=sweep_key)
    # independent insertion sort on x + y alone
    ref = []
    for p in pts:
        j = 0
        while j < len(ref) and ref[j].x + ref[j].y < p.x + p.y:
            j += 1
        ref.insert(j, p)
    assert by_key == ref


@given(st.lists(points, min_size=2, unique=True))
def test_sweep_key_strict_total_order(pts):
    keys = [sweep_key(p) for p in pts]
    assert len(set(keys)) == len(pts)
    ordered = sorted(pts)
    assert all(a < b for a, b in zip(ordered, ordered[1:]))


@given(triangles, points)
def test_map_then_inverse_is_exact(T, p):
    A = canonical_map(T)
    assert A.inverse()(A(p)) == p
    assert A.compose(A.inverse()).is_identity()
    assert A.inverse().compose(A).is_identity()


def _in_triangle(p, verts):
    s = [orientation(verts[i], verts[(i + 1) % 3], p) for i in range(3)]
    return all(v >= 0 for v in s) or all(v <= 0 for v in s)


@given(triangles, points, scalars, scalars, st.fractions(min_value=0, max_value=10, max_denominator=6))
def test_membership_preserved_under_canonical_map(T, p, a, b, scale):
    A = canonical_map(T)
    H = Homothet(a, b, a + b + scale)
    assume(scale > 0)
    world = [A.inverse()(v) for v in H.vertices()]
    assert contains(H, A(p)) == _in_triangle(p, world)


homothets = st.tuples(scalars, scalars, st.fractions(min_value=0, max_value=10, max_denominator=6)).map(
    lambda t: Homothet(t[0], t[1], t[0] + t[1] + t[2]))


@given(homothets, homothets, st.lists(points, max_size=30))
def test_subset_order_implies_containment(H1, H2, pts):
    if H1.issubset(H2):
        for p in pts:
            assert not contains(H1, p) or contains(H2, p)


@settings(max_examples=200)
@given(homothets, homothets)
def test_subset_field_test_matches_vertices(H1, H2):
    # H1 ⊆ H2 exactly when its three corners are in H2 (convexity)
    assert H1.issubset(H2) == all(contains(H2, v) for v in H1.vertices())


def test_quadrant_open_sides():
    q = Quadrant(1, 1, a_open=True)
    assert not q.contains(Point(1, 2))
    assert q.contains(Point(2, 1))
    assert Quadrant(0, 0).cap(3) == Homothet(0, 0, 3)
    with pytest.raises(ValueError):
        q.cap(5)


def test_scalar_text_round_trip():
    for v in [F(0), F(-3), F(7, 3), F(-1, 9)]:
        assert parse_scalar(format_scalar(v)) == v
    with pytest.raises(ValueError):
        parse_scalar("1.5")
    assert parse_triangle("0,0 1,0 0,1") == Triangle.unit()
    assert parse_triangle("0/1,0 2,1/2 -1,3").v1 == Point(2, F(1, 2))
