import pytest

from qacm.groebner import Ideal, ideal_intersection
from qacm.mcm import construct_e0
from qacm.poly import DEFAULT_FIELD, Polynomial
from qacm.rings import canonical_ring


@pytest.fixture(scope="session")
def field():
    return DEFAULT_FIELD


@pytest.fixture(scope="session")
def x(field):
    return [Polynomial.variable(field, i) for i in range(5)]


@pytest.fixture(scope="session")
def ring(field):
    return canonical_ring(field)


@pytest.fixture(scope="session")
def quadric(ring):
    return ring.quadric


@pytest.fixture(scope="session")
def line(x, ring):
    return Ideal([x[0], x[2], x[4]], ring=ring)


@pytest.fixture(scope="session")
def other_line(x, ring):
    return Ideal([x[0], x[3], x[4]], ring=ring)


@pytest.fixture(scope="session")
def ci_curve(x, ring):
    return Ideal([x[0], x[4]], ring=ring)


@pytest.fixture(scope="session")
def skew_lines(x, ring, line):
    return ideal_intersection(line, Ideal([x[1], x[3], x[4]], ring=ring))


@pytest.fixture(scope="session")
def e0(ring, line):
    return construct_e0(ring, line)
