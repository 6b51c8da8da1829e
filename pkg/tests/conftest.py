import math

import pytest
from hypothesis import assume, settings, strategies as st

from mstpierce import Instance

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")

coord = st.floats(-100, 100, allow_nan=False, allow_infinity=False)
point = st.tuples(coord, coord)


def min_gap(pts):
    return min(math.dist(p, q) for i, p in enumerate(pts) for q in pts[i + 1 :])


@st.composite
def instances(draw, min_n=2, max_n=12):
    pts = draw(st.lists(point, min_size=min_n, max_size=max_n, unique=True))
    if len(pts) > 1:
        assume(min_gap(pts) > 1e-6)
    return Instance(tuple(pts))


UNIT_SQUARE = ((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0))
EQUILATERAL = ((0.0, 0.0), (2.0, 0.0), (1.0, math.sqrt(3.0)))
COLLINEAR = ((0.0, 0.0), (1.0, 0.0), (3.0, 0.0))


@pytest.fixture
def square():
    return Instance(UNIT_SQUARE, "unit-square")


@pytest.fixture
def triangle():
    return Instance(EQUILATERAL, "equilateral")


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
