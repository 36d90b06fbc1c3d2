"""Worldline lattice toy model: transition matrices and life expectancies.

The package builds the particle (worldline) representation of a 1D lattice
scalar field, solves the half-line fixed point for the amplitude sums,
forms Born-rule transition matrices between sequential conditions (basis
particle numbers or macroscopic superpositions of them), and analyses the
resulting absorbing chain: survival curves, age distributions and life
expectancies. Every analytic shortcut has an independent brute-force
validator in :mod:`latticelife.oracle`.
"""

from .amplitudes import (
    LatticeParams,
    ModeKind,
    ModeSpec,
    Potential,
    QUANTUM1,
    REAL_QUANTUM1,
    edge_amplitude,
    eta,
    half_integer_gamma,
    vertex_amplitude,
)
from .errors import (
    ConvergenceFailure,
    DegenerateDominant,
    DomainError,
    EmptyAlive,
    ImmortalChain,
    LatticeLifeError,
    NoConvergence,
    RangeError,
    SingularMatrix,
    ToleranceNotMet,
    ZeroColumn,
)
from .halfline import HalfLineVector, build_M, solve_u
from .lifetable import (
    LifeTable,
    alive_states,
    life_expectancy,
    make_life_table,
    reduce,
    survival_curve,
)
from .linalg import ComplexMatrix, EigenResult, eigen_decompose, solve_linear
from .transition import (
    Basis,
    StateLabel,
    Superposed,
    TransitionMatrix,
    basis_amplitude,
    basis_transition_matrix,
    deterministic_mode_matrix,
    ephemeral_mode_matrix,
    superposition_pairs,
    superposition_transition_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "Basis",
    "ComplexMatrix",
    "ConvergenceFailure",
    "DegenerateDominant",
    "DomainError",
    "EigenResult",
    "EmptyAlive",
    "HalfLineVector",
    "ImmortalChain",
    "LatticeLifeError",
    "LatticeParams",
    "LifeTable",
    "ModeKind",
    "ModeSpec",
    "NoConvergence",
    "Potential",
    "QUANTUM1",
    "REAL_QUANTUM1",
    "RangeError",
    "SingularMatrix",
    "StateLabel",
    "Superposed",
    "ToleranceNotMet",
    "TransitionMatrix",
    "ZeroColumn",
    "alive_states",
    "basis_amplitude",
    "basis_transition_matrix",
    "build_M",
    "deterministic_mode_matrix",
    "edge_amplitude",
    "eigen_decompose",
    "ephemeral_mode_matrix",
    "eta",
    "half_integer_gamma",
    "life_expectancy",
    "make_life_table",
    "reduce",
    "solve_linear",
    "solve_u",
    "superposition_pairs",
    "superposition_transition_matrix",
    "survival_curve",
    "vertex_amplitude",
]
