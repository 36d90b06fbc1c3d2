"""Absorbing-chain analysis: reduced matrix, survival curve, life expectancy.

Removing the rows and columns of the absorbing (death) states from a
column-stochastic transition matrix leaves the substochastic reduced matrix
T; the leaked column mass is the per-step death probability. For an initial
distribution v over alive states,

    q(s) = || T^(s-1) v ||_1          survival probability at step s,
    p_age(s) = q(s) - q(s+1)          probability of dying after step s,
    <s> = || (I - T)^(-1) v ||_1      life expectancy in steps.
"""

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import EmptyAlive, ImmortalChain, SingularMatrix
from .linalg import ComplexMatrix, eigen_decompose, solve_linear
from .transition import StateLabel, TransitionMatrix

#: Spectral radius must stay below 1 by at least this margin.
SPECTRAL_MARGIN = 1e-9

#: Entries of (I-T)^(-1) v more negative than this indicate a broken solve;
#: anything in (-CLIP_TOL, 0) is clipped to zero.
CLIP_TOL = 1e-12


@dataclass(frozen=True)
class LifeTable:
    """Survival curve, age distribution and life expectancy for one start state.

    ``survival[s-1]`` is q(s) for s = 1..S and ``age_dist[s-1]`` is p_age(s);
    q is non-increasing and q(1) = 1 for a point-mass start.
    """

    initial_state: StateLabel
    survival: np.ndarray
    age_dist: np.ndarray
    expectancy: float


def alive_states(matrix: TransitionMatrix, death_states: Iterable[StateLabel]) -> tuple:
    """States of ``matrix`` that are not death states, original order kept."""
    death = set(death_states)
    unknown = death - set(matrix.states)
    if unknown:
        raise ValueError(f"death states not in the matrix: {sorted(s.label() for s in unknown)}")
    return tuple(s for s in matrix.states if s not in death)


def reduce(matrix: TransitionMatrix, death_states: Iterable[StateLabel]) -> ComplexMatrix:
    """Reduced matrix T: death rows and columns removed, order preserved.

    The remaining columns are deliberately not renormalized; their missing
    mass is the probability of dying in one step.
    """
    death = set(death_states)
    alive = alive_states(matrix, death)
    if not alive:
        raise EmptyAlive("every state was declared a death state")
    idx = [i for i, s in enumerate(matrix.states) if s not in death]
    sub = matrix.p[np.ix_(idx, idx)]
    return ComplexMatrix(sub.astype(np.complex128))


def survival_curve(t: ComplexMatrix, v, horizon: int) -> np.ndarray:
    """q(s) = ||T^(s-1) v||_1 for s = 1..horizon, by repeated products."""
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    arr = t.array.real
    w = np.asarray(v, dtype=float).copy()
    if w.shape != (t.dim,):
        raise ValueError(f"initial vector shape {w.shape} does not match dim {t.dim}")
    if w.min() < 0 or w.sum() > 1.0 + 1e-12:
        raise ValueError("initial vector must be a (sub-)probability vector")
    q = np.empty(horizon)
    q[0] = np.abs(w).sum()
    for s in range(1, horizon):
        w = arr @ w
        q[s] = np.abs(w).sum()
    return q


def life_expectancy(t: ComplexMatrix, v) -> float:
    """<s> = ||(I - T)^(-1) v||_1 via a linear solve, no inversion.

    Raises
    ------
    ImmortalChain
        If the spectral radius of T is not below 1 - SPECTRAL_MARGIN, or the
        solve reports a singular system: no absorbing state is reachable and
        the expectancy diverges.
    """
    radius = float(np.abs(eigen_decompose(t).values[0]))
    if radius > 1.0 - SPECTRAL_MARGIN:
        raise ImmortalChain(f"spectral radius {radius!r} too close to 1")
    arr = t.array
    eye = np.eye(t.dim, dtype=np.complex128)
    try:
        x = solve_linear(ComplexMatrix(eye - arr), np.asarray(v, dtype=np.complex128))
    except SingularMatrix as exc:
        raise ImmortalChain(str(exc)) from exc
    xr = x.real
    if xr.min() < -CLIP_TOL:
        raise ImmortalChain(f"negative visit count {xr.min():.3e} from the solve")
    return float(np.clip(xr, 0.0, None).sum())


def make_life_table(
    matrix: TransitionMatrix,
    death_states: Iterable[StateLabel],
    initial_state: StateLabel,
    horizon: int = 10_000,
    survival_floor: float = 1e-10,
) -> LifeTable:
    """LifeTable for a point mass on ``initial_state``.

    The survival curve is truncated at the first step where q drops below
    ``survival_floor``, or at ``horizon``, whichever comes first; the age
    distribution needs one extra step of q beyond the truncation.
    """
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    death = set(death_states)
    alive = alive_states(matrix, death)
    if initial_state not in alive:
        raise ValueError(f"initial state {initial_state.label()} is not an alive state")
    t = reduce(matrix, death)
    v = np.zeros(len(alive))
    v[alive.index(initial_state)] = 1.0

    arr = t.array.real
    q = [1.0]
    w = v
    while len(q) < horizon + 1:
        w = arr @ w
        q.append(float(w.sum()))
        if q[-2] < survival_floor:
            break
    q = np.asarray(q)
    survival = q[:-1]
    age_dist = np.clip(q[:-1] - q[1:], 0.0, None)
    survival.setflags(write=False)
    age_dist.setflags(write=False)
    return LifeTable(
        initial_state=initial_state,
        survival=survival,
        age_dist=age_dist,
        expectancy=life_expectancy(t, v),
    )
