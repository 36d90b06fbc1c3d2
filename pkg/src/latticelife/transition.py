"""Transition matrices between sequential candidate conditions.

The amplitude linking particle number m on one edge to particle number n on
the adjacent edge is A(n|m) = U_n E_n V_{m+n} E_m U_m; the conditional
probability is the Born-rule ratio

    p(n|m) = |U_n E_n V_{m+n}|^2 / sum_n' |U_n' E_n' V_{m+n'}|^2,

where the common factor |E_m U_m|^2 cancels. The denominator runs over the
declared state set, so every constructor here returns a column-stochastic
matrix with p[row = next][col = previous].

Besides the basis ladder this module builds the macroscopic-superposition
variant, whose conditions are (|m1> +/- |m2>) / sqrt(2) over dynamically
distant particle numbers m2 = m1 + N - 1, plus the vacuum as the reachable
absorbing state. Degenerate fixture modes (a permutation rule and a
memoryless rule) are included for tests.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .amplitudes import LatticeParams, ModeSpec, edge_amplitude, vertex_amplitude
from .errors import DomainError, RangeError, ZeroColumn
from .halfline import HalfLineVector

#: Column sums must match 1 to this tolerance.
COLUMN_SUM_TOL = 1e-10


@dataclass(frozen=True)
class Basis:
    """Condition pinned to one particle-number level k (particle number 2k-2)."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"level index must be >= 1, got {self.k}")

    @property
    def particle_number(self) -> int:
        return 2 * self.k - 2

    def label(self) -> str:
        return f"n={self.particle_number}"


@dataclass(frozen=True)
class Superposed:
    """Equal-weight superposition (delta_k1 + sign * delta_k2) / sqrt(2)."""

    k1: int
    k2: int
    sign: int

    def __post_init__(self):
        if not self.k1 < self.k2:
            raise ValueError(f"require k1 < k2, got ({self.k1}, {self.k2})")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    @property
    def particle_numbers(self) -> tuple:
        return (2 * self.k1 - 2, 2 * self.k2 - 2)

    def label(self) -> str:
        m1, m2 = self.particle_numbers
        return f"{m1}{'+' if self.sign > 0 else '-'}{m2}"


StateLabel = Union[Basis, Superposed]


@dataclass(frozen=True)
class TransitionMatrix:
    """Column-stochastic matrix over a labeled state set.

    ``p[row, col]`` is the probability of the next condition ``states[row]``
    given the previous condition ``states[col]``.
    """

    states: tuple
    p: np.ndarray
    mode: Optional[ModeSpec] = None
    params: Optional[LatticeParams] = None

    def __post_init__(self):
        arr = np.array(self.p, dtype=float, order="C")
        n = len(self.states)
        if arr.shape != (n, n):
            raise ValueError(f"matrix shape {arr.shape} does not match {n} states")
        if not np.isfinite(arr).all():
            raise ValueError("transition probabilities must be finite")
        if arr.min() < 0.0 or arr.max() > 1.0 + 1e-12:
            raise ValueError("transition probabilities must lie in [0, 1]")
        colsum = arr.sum(axis=0)
        if np.abs(colsum - 1.0).max() > COLUMN_SUM_TOL:
            raise ValueError(
                f"column sums deviate from 1 by {np.abs(colsum - 1.0).max():.3e}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "p", arr)
        object.__setattr__(self, "states", tuple(self.states))

    def column(self, state: StateLabel) -> np.ndarray:
        return self.p[:, self.states.index(state)]

    def labels(self) -> list:
        return [s.label() for s in self.states]


def basis_amplitude(u: HalfLineVector, mode: ModeSpec, eta: float, m: int, n: int) -> complex:
    """A(n|m) = U_n E_n V_{m+n} E_m U_m for even particle numbers m, n."""
    assert m % 2 == 0 and n % 2 == 0, "interior occupations are always even"
    if m < 0 or n < 0:
        raise RangeError(f"particle numbers must be >= 0, got ({m}, {n})")
    km, kn = m // 2, n // 2
    if km >= u.cutoff or kn >= u.cutoff:
        raise RangeError(
            f"particle numbers ({m}, {n}) exceed cutoff {u.cutoff} "
            f"(max particle number {2 * u.cutoff - 2})"
        )
    return (
        u.u[kn]
        * edge_amplitude(mode, n)
        * vertex_amplitude(mode, eta, m + n)
        * edge_amplitude(mode, m)
        * u.u[km]
    )


def _normalize_column(amps: np.ndarray) -> np.ndarray:
    weights = np.abs(amps) ** 2
    denom = weights.sum()
    if denom <= 0.0 or not np.isfinite(denom):
        raise ZeroColumn("transition denominator vanished; cutoff too small")
    return weights / denom


def basis_transition_matrix(
    u: HalfLineVector,
    mode: ModeSpec,
    eta: float,
    params: Optional[LatticeParams] = None,
) -> TransitionMatrix:
    """p(n|m) over the N retained levels, column-stochastic by construction.

    The half-line factor enters only through |U_n|, so rescaling u by any
    nonzero constant leaves the probabilities unchanged.
    """
    n_levels = u.cutoff
    states = tuple(Basis(k) for k in range(1, n_levels + 1))
    edge = np.array([edge_amplitude(mode, 2 * k) for k in range(n_levels)])
    p = np.empty((n_levels, n_levels), dtype=float)
    for col in range(n_levels):
        m = 2 * col
        amps = np.array(
            [u.u[row] * edge[row] * vertex_amplitude(mode, eta, m + 2 * row) for row in range(n_levels)]
        )
        p[:, col] = _normalize_column(amps)
    return TransitionMatrix(states=states, p=p, mode=mode, params=params)


def superposition_pairs(cutoff: int) -> list:
    """Superposed particle-number pairs (m1, m1 + cutoff - 1) inside the ladder.

    m1 runs over the even particle numbers 2, 4, ... below the cutoff index;
    the partner sits cutoff - 1 higher, which stays even (and lands exactly
    on the top retained level for the largest m1) only when the cutoff is
    odd. The reference runs use cutoffs 5, 9, 13.
    """
    if cutoff % 2 == 0:
        raise DomainError(
            f"superposition pairing requires an odd cutoff, got {cutoff}: "
            "partners m1 + cutoff - 1 must stay on even particle numbers"
        )
    return [(m1, m1 + cutoff - 1) for m1 in range(2, cutoff, 2)]


def _components(state: StateLabel) -> list:
    """(particle number, coefficient) decomposition of a condition."""
    if isinstance(state, Basis):
        return [(state.particle_number, 1.0)]
    m1, m2 = state.particle_numbers
    root_half = 1.0 / np.sqrt(2.0)
    return [(m1, root_half), (m2, state.sign * root_half)]


def superposition_amplitude(
    u: HalfLineVector,
    mode: ModeSpec,
    eta: float,
    prev_state: StateLabel,
    next_state: StateLabel,
) -> complex:
    """Bilinear expansion A(l|l') = sum_{a,b} c'_a c_b A(n_b | m_a)."""
    amp = 0.0 + 0.0j
    for m_prev, c_prev in _components(prev_state):
        for m_next, c_next in _components(next_state):
            amp += c_prev * c_next * basis_amplitude(u, mode, eta, m_prev, m_next)
    return amp


def superposition_transition_matrix(
    u: HalfLineVector,
    mode: ModeSpec,
    eta: float,
    params: Optional[LatticeParams] = None,
) -> TransitionMatrix:
    """p(l|l') over the superposed conditions plus the vacuum death state.

    States are Superposed(k1, k2, +/-1) for every pair from
    :func:`superposition_pairs` at the vector's cutoff, followed by Basis(1)
    (particle number 0) so that death is reachable. Probabilities follow the
    same Born-rule normalization over this state set.
    """
    pairs = superposition_pairs(u.cutoff)
    states = []
    for m1, m2 in pairs:
        k1, k2 = m1 // 2 + 1, m2 // 2 + 1
        states.append(Superposed(k1, k2, +1))
        states.append(Superposed(k1, k2, -1))
    states.append(Basis(1))
    states = tuple(states)

    n_states = len(states)
    p = np.empty((n_states, n_states), dtype=float)
    for col, prev_state in enumerate(states):
        amps = np.array(
            [superposition_amplitude(u, mode, eta, prev_state, nxt) for nxt in states]
        )
        p[:, col] = _normalize_column(amps)
    return TransitionMatrix(states=states, p=p, mode=mode, params=params)


def deterministic_mode_matrix(perm: Sequence[int], states: Optional[Sequence[StateLabel]] = None) -> TransitionMatrix:
    """Permutation rule: the next condition is uniquely determined.

    ``perm[c]`` is the 0-based index of the successor of state ``c``.
    """
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"not a permutation of 0..{n - 1}: {list(perm)}")
    if states is None:
        states = tuple(Basis(k) for k in range(1, n + 1))
    p = np.zeros((n, n))
    for col, row in enumerate(perm):
        p[row, col] = 1.0
    return TransitionMatrix(states=tuple(states), p=p)


def ephemeral_mode_matrix(dist: Sequence[float], states: Optional[Sequence[StateLabel]] = None) -> TransitionMatrix:
    """Memoryless rule: every column equals the same distribution."""
    d = np.asarray(dist, dtype=float)
    if d.ndim != 1 or len(d) < 1:
        raise ValueError("distribution must be a non-empty vector")
    if d.min() < 0 or abs(d.sum() - 1.0) > COLUMN_SUM_TOL:
        raise ValueError("distribution entries must be >= 0 and sum to 1")
    if states is None:
        states = tuple(Basis(k) for k in range(1, len(d) + 1))
    p = np.tile(d[:, None], (1, len(d)))
    return TransitionMatrix(states=tuple(states), p=p)
