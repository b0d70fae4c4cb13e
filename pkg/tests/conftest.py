import pytest

import gammacheb as gc
from gammacheb.gammafam import context_for


@pytest.fixture(scope="session")
def gamma30():
    return gc.generate_table(gc.GAMMA, 53, context_for(30, 53))


@pytest.fixture(scope="session")
def invgamma30():
    return gc.generate_table(gc.INVGAMMA, 53, context_for(30, 53))


@pytest.fixture(scope="session")
def lngamma30():
    return gc.generate_table(gc.LNGAMMA, 53, context_for(30, 53))


@pytest.fixture(scope="session")
def psi0_20():
    return gc.generate_psi_table(0, 20)


@pytest.fixture(scope="session")
def psi1_18():
    return gc.generate_psi_table(1, 18)


@pytest.fixture(scope="session")
def psi_chain22():
    """psi0..psi3 derived step by step from one 22-digit ln-gamma fit."""
    base = gc.generate_auto(gc.LNGAMMA, 22)
    tables = [gc.derive_psi_table(base)]
    for order in (1, 2, 3):
        tables.append(gc.derive_polygamma_table(tables[-1], order))
    return base, tables


@pytest.fixture(scope="session")
def gamma13():
    return gc.generate_auto(gc.GAMMA, 13)
