import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from polychrome.geometry import Point

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_points(rng: random.Random, n: int, den: int = 50, distinct: bool = True) -> list[Point]:
    """Points of the unit triangle on a lattice of step ``1/den``."""
    seen = set()
    pts = []
    while len(pts) < n:
        u, v = rng.randint(0, den), rng.randint(0, den)
        if u + v > den or (distinct and (u, v) in seen):
            continue
        seen.add((u, v))
        pts.append(Point(Fraction(u, den), Fraction(v, den)))
    return pts


@pytest.fixture
def rng():
    return random.Random(12345)


scalars = st.fractions(min_value=-20, max_value=20, max_denominator=12)
points = st.builds(Point, scalars, scalars)
