"""Renormalized mass and the edge/vertex amplitudes of the worldline model.

A configuration of the 1D lattice model assigns a particle count to every
edge; weights factorize into per-edge and per-vertex amplitudes. Two
amplitude rules are supported:

* complex rule (``Quantum1``): edge weight ``(-i)^n / n!`` and vertex weight
  ``(i*eta)^(-(1+n)/2) * Gamma((1+n)/2)`` on the principal branch,
* real rule (``RealQuantum1``): edge weight ``1 / n!`` and vertex weight
  ``eta^(-(1+n)/2) * Gamma((1+n)/2)``, requiring ``eta > 0``.

The vertex closed forms are the free-potential values of
``2 * integral_0^inf r^n exp(-i eta r^2) dr`` and its real-exponent
analogue. ``eta`` collects the bare lattice data ``a^2 m^2 / 2`` and the
spacetime dimension.
"""

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError

#: Edge occupations above this are computed in log space (the values are
#: astronomically small and only ever arise far beyond any useful cutoff).
_EDGE_LOGSPACE_THRESHOLD = 150

#: (-i)^n cycles with period 4.
_MINUS_I_POWERS = (1 + 0j, -1j, -1 + 0j, 1j)


class ModeKind(Enum):
    QUANTUM1 = "quantum1"
    REAL_QUANTUM1 = "realquantum1"


class Potential(Enum):
    FREE = "free"


@dataclass(frozen=True)
class ModeSpec:
    """Which amplitude rule applies. The kind fixes every formula below."""

    kind: ModeKind
    potential: Potential = Potential.FREE


QUANTUM1 = ModeSpec(ModeKind.QUANTUM1)
REAL_QUANTUM1 = ModeSpec(ModeKind.REAL_QUANTUM1)


@dataclass(frozen=True)
class LatticeParams:
    """Bare-mass combination a^2 m^2 / 2, dimension D and the derived eta."""

    half_bare_mass_sq: float
    dimension: int
    eta: float

    @classmethod
    def derive(cls, mode: ModeSpec, half_bare_mass_sq: float, dimension: int) -> "LatticeParams":
        return cls(
            half_bare_mass_sq=half_bare_mass_sq,
            dimension=dimension,
            eta=eta(mode, half_bare_mass_sq, dimension),
        )


def eta(mode: ModeSpec, half_bare_mass_sq: float, dimension: int) -> float:
    """Renormalized mass parameter.

    ``a^2 m^2 / 2 + D - 2`` under the complex rule (the kinetic coupling in
    the time direction carries metric signature -1), ``a^2 m^2 / 2 + D``
    under the real rule (Euclidean metric).
    """
    if half_bare_mass_sq < 0:
        raise DomainError(f"half_bare_mass_sq must be >= 0, got {half_bare_mass_sq}")
    if dimension < 1:
        raise DomainError(f"dimension must be >= 1, got {dimension}")
    # integer shift applied first so e.g. 0.1 + (1 - 2) rounds to exactly -0.9
    if mode.kind is ModeKind.QUANTUM1:
        return half_bare_mass_sq + (dimension - 2)
    return half_bare_mass_sq + dimension


def half_integer_gamma(two_a: int) -> float:
    """Gamma(two_a / 2) for positive integer two_a.

    Exact recurrence from Gamma(1/2) = sqrt(pi) and Gamma(1) = 1; no general
    Gamma approximation enters, so downstream comparisons carry no
    approximation error from this factor.
    """
    if two_a < 1:
        raise DomainError(f"gamma argument must be positive, got {two_a}/2")
    if two_a % 2 == 0:
        return float(math.factorial(two_a // 2 - 1))
    val = math.sqrt(math.pi)
    for odd in range(1, two_a - 1, 2):
        val *= odd / 2.0
    return val


def edge_amplitude(mode: ModeSpec, n: int) -> complex:
    """Weight of an edge crossed by ``n`` particle segments."""
    if n < 0:
        raise DomainError(f"occupation must be >= 0, got {n}")
    if n > _EDGE_LOGSPACE_THRESHOLD:
        mag = math.exp(-math.lgamma(n + 1))
    else:
        mag = 1.0 / math.factorial(n)
    if mode.kind is ModeKind.QUANTUM1:
        return _MINUS_I_POWERS[n % 4] * mag
    return complex(mag)


def vertex_amplitude(mode: ModeSpec, eta: float, n: int) -> complex:
    """Weight of a vertex crossed by ``n`` particle segments, free potential.

    Complex rule: ``(i*eta)^(-(1+n)/2) * Gamma((1+n)/2)`` with the principal
    branch of the complex power (principal logarithm, argument in (-pi, pi]).
    Real rule: ``eta^(-(1+n)/2) * Gamma((1+n)/2)``, defined for ``eta > 0``
    where the underlying integral converges.
    """
    if n < 0:
        raise DomainError(f"occupation must be >= 0, got {n}")
    g = half_integer_gamma(n + 1)
    if mode.kind is ModeKind.REAL_QUANTUM1:
        if eta <= 0:
            raise DomainError(f"real rule requires eta > 0, got {eta}")
        return complex(eta ** (-(1 + n) / 2.0) * g)
    if eta == 0:
        raise DomainError("complex rule requires eta != 0")
    return cmath.exp(-(1 + n) / 2.0 * cmath.log(1j * eta)) * g
