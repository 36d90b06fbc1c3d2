"""Half-line amplitude sums via the dominant eigenvector of the level matrix.

On the unbounded 1D lattice every edge occupation is even, so the retained
levels are indexed k = 1..N with particle number 2k-2. The half-line sum
U_m over all configurations with boundary mismatch m satisfies the
fixed-point relation U_m = sum_n U_n E_n V_{m+n} over even n, i.e. u = M u
with M[i, j] = V(2i+2j-4) * E(2j-2) (1-based). A finite cutoff leaves M
without an exact unit eigenvalue; dividing M by its largest-modulus
eigenvalue restores one, and u is the matching eigenvector.
"""

from dataclasses import dataclass

import numpy as np

from .amplitudes import ModeSpec, edge_amplitude, vertex_amplitude
from .errors import ConvergenceFailure, DegenerateDominant
from .linalg import ComplexMatrix, eigen_decompose

#: Relative gap below which the two largest eigenvalue moduli are
#: considered degenerate and no dominant eigenvector is returned.
DEGENERACY_TOL = 1e-6

#: Fixed-point residual bound: ||(M / lambda) u - u|| <= FIXED_POINT_TOL.
FIXED_POINT_TOL = 1e-8


@dataclass(frozen=True)
class HalfLineVector:
    """Half-line amplitude sums U over the retained even levels.

    ``u[k-1]`` holds U at particle number 2k-2 for k = 1..cutoff. The vector
    is the unit-norm dominant eigenvector of the level matrix, so
    ``(M / renorm_eigenvalue) u = u`` up to the fixed-point tolerance.
    ``full_spectrum`` keeps every eigenvalue (descending modulus) for
    reporting.
    """

    cutoff: int
    u: np.ndarray
    renorm_eigenvalue: complex
    full_spectrum: np.ndarray


def build_M(mode: ModeSpec, eta: float, cutoff: int) -> ComplexMatrix:
    """Level matrix M[i, j] = V(2i+2j-4) * E(2j-2), 1-based i, j."""
    if cutoff < 2:
        raise ValueError(f"cutoff must be >= 2, got {cutoff}")
    edge = [edge_amplitude(mode, 2 * j) for j in range(cutoff)]
    vert = [vertex_amplitude(mode, eta, occ) for occ in range(0, 4 * cutoff - 3, 2)]
    m = np.empty((cutoff, cutoff), dtype=np.complex128)
    for i in range(cutoff):
        for j in range(cutoff):
            m[i, j] = vert[i + j] * edge[j]
    return ComplexMatrix(m)


def solve_u(m: ComplexMatrix) -> HalfLineVector:
    """Dominant eigenvector of M, with the divided-out eigenvalue recorded.

    Raises
    ------
    DegenerateDominant
        If the two largest eigenvalue moduli agree to better than the
        relative degeneracy tolerance, so "the" dominant eigenvector is
        ill-defined.
    """
    eig = eigen_decompose(m)
    lam = complex(eig.values[0])
    if len(eig.values) > 1:
        gap = abs(eig.values[0]) - abs(eig.values[1])
        if gap < DEGENERACY_TOL * max(abs(lam), np.finfo(float).tiny):
            raise DegenerateDominant(
                f"two largest eigenvalue moduli within {DEGENERACY_TOL:.0e} "
                f"relative of each other: {abs(eig.values[0]):.6e}, {abs(eig.values[1]):.6e}"
            )
    u = eig.vectors[:, 0].copy()
    residual = np.linalg.norm(m.array @ u / lam - u)
    if residual > FIXED_POINT_TOL:
        raise ConvergenceFailure(f"fixed-point residual {residual:.3e} too large")
    u.setflags(write=False)
    return HalfLineVector(
        cutoff=m.dim, u=u, renorm_eigenvalue=lam, full_spectrum=eig.values
    )
