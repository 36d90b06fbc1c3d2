"""Dense complex linear algebra for small (up to ~64x64) matrices.

Provides a general (non-Hermitian) eigendecomposition with a fixed ordering
and phase convention, and an LU-based linear solve with an explicit pivot
threshold. Both delegate the factorizations to LAPACK; the contract here is
the ordering, the phase convention and the error behaviour, not the method.
"""

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ConvergenceFailure, SingularMatrix

#: Residual bound for eigenpairs: ||A v - lam v|| <= RESIDUAL_TOL * (1 + ||A||_F).
RESIDUAL_TOL = 1e-8

#: Relative pivot threshold below which a solve is declared singular.
PIVOT_TOL = 1e-12


@dataclass(frozen=True)
class ComplexMatrix:
    """Square complex matrix with finite entries.

    The entry in row ``i`` and column ``j`` (1-based, as used throughout the
    model formulas) is ``entry(i, j)``; ``array`` is the plain 0-based ndarray.
    The wrapped array is frozen so instances can be shared across threads.
    """

    array: np.ndarray

    def __post_init__(self):
        arr = np.array(self.array, dtype=np.complex128, order="C")
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {arr.shape}")
        if arr.shape[0] < 1:
            raise ValueError("matrix dimension must be at least 1")
        if not np.isfinite(arr).all():
            raise ValueError("matrix entries must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "array", arr)

    @property
    def dim(self) -> int:
        return self.array.shape[0]

    def entry(self, i: int, j: int) -> complex:
        """1-based accessor: i is the row index, j the column index."""
        if not (1 <= i <= self.dim and 1 <= j <= self.dim):
            raise IndexError(f"1-based indices ({i}, {j}) outside dim {self.dim}")
        return complex(self.array[i - 1, j - 1])


@dataclass(frozen=True)
class EigenResult:
    """Eigenvalues and matching eigenvectors of a general complex matrix.

    ``values`` is sorted by descending modulus, ties broken by descending
    real part, then descending imaginary part. ``vectors[:, i]`` is the unit
    2-norm eigenvector for ``values[i]``, with its largest-modulus component
    rotated to be real and non-negative (this fixes the global phase).
    """

    values: np.ndarray
    vectors: np.ndarray


def _fix_phase(v: np.ndarray) -> np.ndarray:
    v = v / np.linalg.norm(v)
    idx = int(np.argmax(np.abs(v)))
    pivot = v[idx]
    if abs(pivot) > 0.0:
        v = v * (pivot.conjugate() / abs(pivot))
    return v


def _eigen_order(values: np.ndarray) -> list:
    """Descending modulus; moduli within 1e-12 relative count as tied and are
    broken by descending real part, then descending imaginary part."""
    idx = sorted(range(len(values)), key=lambda i: -abs(values[i]))
    out = []
    start = 0
    while start < len(idx):
        stop = start + 1
        scale = abs(values[idx[start]])
        while stop < len(idx) and abs(abs(values[idx[stop]]) - scale) <= 1e-12 * max(scale, 1.0):
            stop += 1
        out.extend(sorted(idx[start:stop], key=lambda k: (-values[k].real, -values[k].imag)))
        start = stop
    return out


def eigen_decompose(a: ComplexMatrix) -> EigenResult:
    """Full eigendecomposition of a general complex matrix.

    Parameters
    ----------
    a : ComplexMatrix
        Finite square matrix, any dimension >= 1.

    Returns
    -------
    EigenResult
        Deterministic for a fixed input on a fixed machine.

    Raises
    ------
    ConvergenceFailure
        If the underlying QR iteration does not converge within the LAPACK
        iteration budget, or a computed eigenpair violates the residual
        bound; both signal pathological input.
    """
    arr = a.array
    try:
        values, vectors = np.linalg.eig(arr)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigendecomposition failed: {exc}") from exc

    order = _eigen_order(values)
    values = values[order]
    vectors = vectors[:, order]
    vectors = np.column_stack([_fix_phase(vectors[:, i]) for i in range(len(values))])

    bound = RESIDUAL_TOL * (1.0 + np.linalg.norm(arr, "fro"))
    residual = np.linalg.norm(arr @ vectors - vectors * values, axis=0)
    if residual.max() > bound:
        raise ConvergenceFailure(
            f"eigenpair residual {residual.max():.3e} exceeds bound {bound:.3e}"
        )
    values.setflags(write=False)
    vectors.setflags(write=False)
    return EigenResult(values=values, vectors=vectors)


def solve_linear(a: ComplexMatrix, b) -> np.ndarray:
    """Solve ``A x = b`` by LU with partial pivoting.

    On well-scaled inputs (entries of order one) the result satisfies
    ``||A x - b|| <= 1e-10 * (1 + ||b||)``; the backward-stable residual
    grows with ``||x||`` for ill-conditioned systems.

    Raises
    ------
    SingularMatrix
        If any pivot falls below ``PIVOT_TOL`` relative to the largest entry
        of ``A``. In the life-expectancy caller this signals a chain with no
        reachable absorbing state.
    """
    arr = a.array
    bvec = np.asarray(b, dtype=np.complex128)
    if bvec.shape != (a.dim,):
        raise ValueError(f"right-hand side has shape {bvec.shape}, expected ({a.dim},)")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(arr, check_finite=False)
    scale = float(np.abs(arr).max())
    min_pivot = float(np.abs(np.diag(lu)).min())
    if min_pivot <= PIVOT_TOL * max(scale, np.finfo(float).tiny):
        raise SingularMatrix(
            f"pivot {min_pivot:.3e} below {PIVOT_TOL:.0e} of scale {scale:.3e}"
        )
    return scipy.linalg.lu_solve((lu, piv), bvec, check_finite=False)
