import numpy as np
import pytest

from latticelife import QUANTUM1, REAL_QUANTUM1, build_M, solve_u

#: Eigenvalues of the complex-rule level matrix at eta = -0.9, N = 5,
#: as multiples of (1 + i), smallest modulus first.
REFERENCE_SPECTRUM = (0.00132099, 0.032359, 0.292563, 1.17831, 2.14224)

QUANTUM_ETA = -0.9
REAL_ETA = 1.1
REFERENCE_CUTOFFS = (5, 9, 13)


@pytest.fixture(scope="session")
def quantum_u5():
    return solve_u(build_M(QUANTUM1, QUANTUM_ETA, 5))


@pytest.fixture(scope="session")
def real_u5():
    return solve_u(build_M(REAL_QUANTUM1, REAL_ETA, 5))


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)
