from fractions import Fraction

import pytest

from nalattice.field import FieldDescriptor, Puiseux
from nalattice.lattice import Lattice

ACCEPTANCE_RESULTS: list[str] = []


def example_2d(p):
    """The lattice spanned by the columns of [[1, 0], [p, p^2]] over Q_p."""
    return Lattice(FieldDescriptor.padic(p), [[1, 0], [p, p * p]])


def example_3d(K):
    pi = K.uniformizer_power(1)
    return Lattice(K, [[1, 0, 0], [1, pi**2, 0], [1, pi, pi**2]])


@pytest.fixture(params=[2, 3, 5])
def padic(request):
    return FieldDescriptor.padic(request.param)


@pytest.fixture
def puiseux():
    return FieldDescriptor.puiseux()


@pytest.fixture(params=["p2", "p3", "puiseux"])
def anyfield(request):
    if request.param == "puiseux":
        return FieldDescriptor.puiseux()
    return FieldDescriptor.padic(int(request.param[1:]))


def t(e, c=1):
    return Puiseux.monomial(Fraction(e), c)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
