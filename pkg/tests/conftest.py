import pytest

from equivz import diagrams as D
from equivz import groups as G


@pytest.fixture(scope="session")
def basis_triv2():
    """Degree-2 quotient basis, trivial decoration group."""
    return D.quotient_basis(2, G.TrivialGroup(), 0)


@pytest.fixture(scope="session")
def basis_z3():
    """Degree-2 quotient basis over Z^3 with support box B=1."""
    return D.quotient_basis(2, G.FreeAbelian(3), 1)


@pytest.fixture(scope="session")
def basis_z5():
    """Degree-2 quotient basis over Z_5 with full support."""
    return D.quotient_basis(2, G.CyclicGroup(5), 4)
