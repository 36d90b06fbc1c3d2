import math

import numpy as np
import pytest

from latticelife import (
    ComplexMatrix,
    DegenerateDominant,
    HalfLineVector,
    QUANTUM1,
    REAL_QUANTUM1,
    basis_transition_matrix,
    build_M,
    solve_u,
)
from latticelife.oracle import power_iteration_u
from conftest import QUANTUM_ETA, REAL_ETA, REFERENCE_CUTOFFS, REFERENCE_SPECTRUM


def test_build_M_reference_moduli():
    m = build_M(QUANTUM1, QUANTUM_ETA, 5)
    moduli = np.sort(np.abs(np.linalg.eigvals(m.array)))
    expected = math.sqrt(2) * np.array(REFERENCE_SPECTRUM)
    assert (np.abs(moduli - expected) / expected).max() < 1e-3


def test_build_M_real_entry():
    m = build_M(REAL_QUANTUM1, REAL_ETA, 2)
    assert m.entry(1, 1).real == pytest.approx(math.sqrt(math.pi / 1.1), rel=1e-12)
    assert m.entry(1, 1).imag == 0.0


def test_build_M_real_positive():
    for cutoff in (2, 5, 13):
        m = build_M(REAL_QUANTUM1, REAL_ETA, cutoff)
        assert (m.array.real > 0).all()
        assert (m.array.imag == 0).all()


def test_build_M_small_cutoff_rejected():
    with pytest.raises(ValueError):
        build_M(QUANTUM1, QUANTUM_ETA, 1)


def test_solve_u_degenerate_identity():
    with pytest.raises(DegenerateDominant):
        solve_u(ComplexMatrix(np.eye(3)))


def test_solve_u_diagonal_dominant():
    hlv = solve_u(ComplexMatrix(np.diag([2.0, 1.0])))
    assert hlv.renorm_eigenvalue == pytest.approx(2.0)
    assert np.allclose(np.abs(hlv.u), [1.0, 0.0], atol=1e-12)


def test_solve_u_reference_lambda(quantum_u5):
    assert quantum_u5.renorm_eigenvalue == pytest.approx(2.14224 * (1 + 1j), rel=1e-3)
    assert len(quantum_u5.full_spectrum) == 5


def test_fixed_point_invariant():
    for mode, e in ((QUANTUM1, QUANTUM_ETA), (REAL_QUANTUM1, REAL_ETA)):
        for cutoff in REFERENCE_CUTOFFS:
            m = build_M(mode, e, cutoff)
            hlv = solve_u(m)
            residual = np.linalg.norm(m.array @ hlv.u / hlv.renorm_eigenvalue - hlv.u)
            assert residual <= 1e-8


def test_power_iteration_matches_solve_u():
    for mode, e in ((QUANTUM1, QUANTUM_ETA), (REAL_QUANTUM1, REAL_ETA)):
        for cutoff in REFERENCE_CUTOFFS:
            m = build_M(mode, e, cutoff)
            u_eig = solve_u(m).u
            u_pow = power_iteration_u(m, max_iter=500, tol=1e-13)
            overlap = np.vdot(u_eig, u_pow)
            aligned = u_pow * (overlap.conjugate() / abs(overlap))
            assert np.linalg.norm(aligned - u_eig) < 1e-6


def test_transition_scale_invariance(quantum_u5):
    base = basis_transition_matrix(quantum_u5, QUANTUM1, QUANTUM_ETA)
    scaled = HalfLineVector(
        cutoff=quantum_u5.cutoff,
        u=quantum_u5.u * (0.3 - 1.7j),
        renorm_eigenvalue=quantum_u5.renorm_eigenvalue,
        full_spectrum=quantum_u5.full_spectrum,
    )
    rescaled = basis_transition_matrix(scaled, QUANTUM1, QUANTUM_ETA)
    assert np.abs(base.p - rescaled.p).max() <= 1e-12
