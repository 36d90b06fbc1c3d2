"""Exception types raised by the numerical core.

Every error raised on a documented failure path derives from
:class:`LatticeLifeError`, so callers (in particular the CLI) can map any
numerical failure to a single exit path.
"""


class LatticeLifeError(Exception):
    """Base class for all package errors."""


class ConvergenceFailure(LatticeLifeError):
    """Eigendecomposition did not converge; the input is pathological."""


class SingularMatrix(LatticeLifeError):
    """LU pivoting hit a pivot below the relative threshold."""


class DegenerateDominant(LatticeLifeError):
    """Two largest eigenvalue moduli coincide; dominant eigenvector ill-defined."""


class ZeroColumn(LatticeLifeError):
    """A transition-probability denominator vanished; cutoff too small."""


class RangeError(LatticeLifeError):
    """Requested occupation level lies outside the stored half-line vector."""


class DomainError(LatticeLifeError):
    """Parameter outside the domain of the requested amplitude rule."""


class EmptyAlive(LatticeLifeError):
    """All states were declared absorbing; nothing left to reduce."""


class ImmortalChain(LatticeLifeError):
    """Spectral radius of the reduced matrix is not below one."""


class NoConvergence(LatticeLifeError):
    """Power iteration failed to settle on a unique dominant direction."""


class ToleranceNotMet(LatticeLifeError):
    """A cross-check disagreed beyond its stated tolerance."""
