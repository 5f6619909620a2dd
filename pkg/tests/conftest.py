from fractions import Fraction

import pytest

from nestofan.geometry import Fan, product, simplex_fan, star_subdivision
from nestofan.moduli import WeightVector

HEXAGON_RAYS = {(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)}


def make_fan(rays, cones, labels=None):
    rank = len(rays[0]) if rays else 0
    return Fan(rank, tuple(map(tuple, rays)), frozenset(tuple(sorted(c)) for c in cones),
               tuple(labels) if labels is not None else None)


def weights(d, n, *a):
    return WeightVector(d, n, tuple(Fraction(x) for x in a))


@pytest.fixture
def sigma1():
    return simplex_fan([4, 5])


@pytest.fixture
def p2():
    return simplex_fan([3, 4, 5])


@pytest.fixture
def square():
    return product(simplex_fan([1, 2]), simplex_fan([3, 4]))


@pytest.fixture
def hexagon(square):
    # (1,0),(0,1) then (-1,0),(0,-1)
    f = square
    a = f.indices_of([1, 3])
    f = star_subdivision(f, a)
    b = f.indices_of([2, 4])
    return star_subdivision(f, b)


CRITERIA: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERIA, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
