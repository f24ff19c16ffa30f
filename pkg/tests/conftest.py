import math

import pytest

from fluxcz import CouplingSpec, FluxoniumParams, assemble, diagonalize

# Reference two-qubit parameter set used throughout the suite (GHz, sweet spot).
QUBIT_A_PARAMS = FluxoniumParams(e_c=1.5, e_l=1.0, e_j=5.5, phi_ext=math.pi)
QUBIT_B_PARAMS = FluxoniumParams(e_c=1.2, e_l=1.0, e_j=5.7, phi_ext=math.pi)


@pytest.fixture(scope="session")
def qubit_a():
    return diagonalize(QUBIT_A_PARAMS)


@pytest.fixture(scope="session")
def qubit_b():
    return diagonalize(QUBIT_B_PARAMS)


@pytest.fixture(scope="session")
def cap_system(qubit_a, qubit_b):
    return assemble(qubit_a, qubit_b, CouplingSpec("capacitive", 0.2))


@pytest.fixture(scope="session")
def ind_system(qubit_a, qubit_b):
    return assemble(qubit_a, qubit_b, CouplingSpec("inductive", 0.015))


@pytest.fixture(scope="session")
def uncoupled_system(qubit_a, qubit_b):
    return assemble(qubit_a, qubit_b, CouplingSpec("capacitive", 0.0))
