"""Landau levels: energies, admissible magnetic numbers, degeneracies and units.

Two families of unitary irreducible representations realize the levels:

* ``"lowest"`` (lowest weight, used for ``beta >= 0``): ``m >= -l``,
  energy ``kappa l (l+1)/2 + beta (l + 1/2)``;
* ``"highest"`` (highest weight, used for ``beta <= 0``): ``m <= l``,
  energy ``kappa l (l+1)/2 - beta (l + 1/2)``.

Both give ``|beta| (l + 1/2) + kappa l (l+1)/2``.  For ``kappa > 0`` the
range of ``m`` is finite, with ``2(l + |beta|/kappa) + 1`` states; for
``kappa <= 0`` it is infinite.  For ``kappa < 0`` only the levels with
``l < |beta|/|kappa| - 1/2`` are square integrable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import DomainError, ParameterError
from .representation import ModelParams, to_fraction

__all__ = [
    "StateLabel",
    "SpectrumLine",
    "PhysicalUnits",
    "default_family",
    "energy",
    "m_range",
    "level_bounds",
    "is_normalizable_level",
    "is_admissible",
    "admissible_levels",
    "uir_coefficient",
    "state_density",
    "beta_from_units",
    "dirac_field",
    "physical_spectrum",
    "monopole_spectrum",
]

Number = Union[int, float, Fraction]

LOWEST = "lowest"
HIGHEST = "highest"
_FAMILY_ALIASES = {
    "lowest": LOWEST, "lowest-weight": LOWEST, "1": LOWEST, 1: LOWEST,
    "highest": HIGHEST, "highest-weight": HIGHEST, "2": HIGHEST, 2: HIGHEST,
}


def _family(family) -> str:
    try:
        return _FAMILY_ALIASES[family]
    except (KeyError, TypeError):
        raise ParameterError(f"unknown family {family!r}") from None


def default_family(params: ModelParams) -> str:
    """The family carrying bound states: lowest weight for ``beta >= 0``."""
    return LOWEST if params.beta >= 0 else HIGHEST


@dataclass(frozen=True)
class StateLabel:
    """Quantum numbers ``(family, l, m)``; real values are allowed for moving states."""

    family: str
    l: Number
    m: Number

    def __post_init__(self):
        object.__setattr__(self, "family", _family(self.family))
        if self.l < 0:
            raise DomainError(f"level index must be non-negative, got {self.l}")

    @property
    def is_standard(self) -> bool:
        return float(self.l).is_integer() and float(self.m).is_integer()


@dataclass(frozen=True)
class SpectrumLine:
    """One Landau level.  ``degeneracy`` and ``m_max``/``m_min`` may be ``math.inf``."""

    l: int
    energy: Number
    degeneracy: Union[int, float]
    m_min: Union[int, float]
    m_max: Union[int, float]
    state_density: float


def _exact(x):
    """Return an exact rational for ints/Fractions, a float otherwise."""
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    return float(x)


def energy(params: ModelParams, family=None, l: Number = 0):
    """Energy of level ``l``; exact (a ``Fraction``) when ``l`` is an integer or rational.

    Real ``l`` is accepted for moving states, in which case a float is returned.
    """
    family = default_family(params) if family is None else _family(family)
    if l < 0:
        raise DomainError(f"level index must be non-negative, got {l}")
    if family == LOWEST and params.beta < 0:
        raise ParameterError("the lowest-weight family requires beta >= 0")
    if family == HIGHEST and params.beta > 0:
        raise ParameterError("the highest-weight family requires beta <= 0")
    lv = _exact(l)
    if isinstance(lv, float):
        k, b = params.k, params.b
        return k * lv * (lv + 1) / 2 + abs(b) * (lv + 0.5)
    return params.kappa * lv * (lv + 1) / 2 + abs(params.beta) * (lv + Fraction(1, 2))


def level_bounds(params: ModelParams):
    """For ``kappa < 0``: ``(normalizable_bound, algebraic_bound)`` on ``l``.

    Square-integrable levels satisfy ``l < |beta|/|kappa| - 1/2``; the purely
    algebraic condition for a bounded representation is ``l < |beta|/|kappa|``.
    Both are ``inf`` when ``kappa >= 0``.
    """
    if params.kappa >= 0:
        return math.inf, math.inf
    ratio = abs(params.beta) / abs(params.kappa)
    return ratio - Fraction(1, 2), ratio


def is_normalizable_level(params: ModelParams, l: Number) -> bool:
    if params.kappa < 0:
        return _exact(l) < level_bounds(params)[0]
    if params.kappa == 0:
        return params.beta != 0
    return True


def m_range(params: ModelParams, family, l: Number):
    """Inclusive ``(m_min, m_max)`` of the level; unbounded ends are ``+-inf``."""
    family = _family(family)
    ll = _exact(l)
    if params.kappa > 0:
        n = params.flux_ratio
        if family == LOWEST:
            return -ll, ll + n
        return -ll + n, ll
    if family == LOWEST:
        return -ll, math.inf
    return -math.inf, ll


def is_admissible(params: ModelParams, label: StateLabel) -> bool:
    """Whether ``(l, m)`` belongs to a square-integrable level of its family."""
    if not is_normalizable_level(params, label.l):
        return False
    if label.family != default_family(params) and params.beta != 0:
        return False
    lo, hi = m_range(params, label.family, label.l)
    m = _exact(label.m)
    return lo <= m <= hi


def _as_int_if_possible(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def state_density(params: ModelParams, l: Number = 0) -> float:
    """Number of states per unit area in level ``l``.

    ``|beta|/2pi + kappa (2l+1)/4pi`` for ``kappa > 0``, ``|beta|/2pi`` otherwise.
    """
    base = abs(params.b) / (2 * math.pi)
    if params.kappa > 0:
        return base + params.k * (2 * float(l) + 1) / (4 * math.pi)
    return base


def admissible_levels(params: ModelParams, family=None, l_max: Optional[int] = None):
    """List the bound Landau levels.

    ``l_max`` truncates the infinite towers (``kappa >= 0``) and defaults to 10.
    For ``kappa < 0`` all square-integrable levels are listed (still capped by
    ``l_max`` when given).  Empty when there is no bound state.
    """
    family = default_family(params) if family is None else _family(family)
    if params.kappa <= 0 and params.beta == 0:
        return []
    if family == LOWEST and params.beta < 0 or family == HIGHEST and params.beta > 0:
        return []
    if l_max is None:
        l_max = 10
    out = []
    l = 0
    while l <= l_max and is_normalizable_level(params, l):
        lo, hi = m_range(params, family, l)
        deg = int(hi - lo) + 1 if params.kappa > 0 else math.inf
        out.append(
            SpectrumLine(
                l=l,
                energy=energy(params, family, l),
                degeneracy=deg,
                m_min=_as_int_if_possible(lo),
                m_max=_as_int_if_possible(hi),
                state_density=state_density(params, l),
            )
        )
        l += 1
    return out


def uir_coefficient(params: ModelParams, family, l: Number, m: Number, sign: str) -> float:
    """Matrix element of ``J+`` or ``J-`` between normalized basis vectors.

    Lowest weight::

        J+ : sqrt((l+m+1)(2beta + kappa(l-m))/2)
        J- : sqrt((l+m)(2beta + kappa(l-m+1))/2)

    Highest weight::

        J+ : sqrt((l-m)(-2beta + kappa(l+m+1))/2)
        J- : sqrt((l-m+1)(-2beta + kappa(l+m))/2)
    """
    family = _family(family)
    ll, mm = _exact(l), _exact(m)
    kap, bet = (params.kappa, params.beta) if not isinstance(ll, float) and not isinstance(mm, float) \
        else (params.k, params.b)
    if family == LOWEST:
        restriction = (ll + mm) * (2 * bet + kap * (ll - mm + 1))
        plus = (ll + mm + 1) * (2 * bet + kap * (ll - mm))
        minus = restriction
    else:
        restriction = (ll - mm) * (-2 * bet + kap * (ll + mm + 1))
        plus = restriction
        minus = (ll - mm + 1) * (-2 * bet + kap * (ll + mm))
    if restriction < 0:
        raise DomainError(f"state (l={l}, m={m}) violates the representation restriction")
    s = {"+": plus, "-": minus}.get(sign)
    if s is None:
        raise ParameterError(f"sign must be '+' or '-', got {sign!r}")
    if s < 0:
        raise DomainError(f"negative squared coefficient {s} at (l={l}, m={m}, {sign})")
    return math.sqrt(float(s) / 2)


# --- physical units ---------------------------------------------------------

@dataclass(frozen=True)
class PhysicalUnits:
    """Constants for the dimensionful spectrum.

    ``field`` is the magnitude ``|B|`` of the magnetic field; ``tau`` its
    orientation relative to the surface normal and ``eta`` the sign of the
    curvature used in the monopole formula.
    """

    hbar: float = 1.0
    m0: float = 1.0
    c: float = 1.0
    q: float = -1.0
    field: float = 0.0
    tau: int = 1
    eta: int = 1
    n_monopole: Optional[int] = None

    def __post_init__(self):
        for name in ("hbar", "m0", "c"):
            if not getattr(self, name) > 0:
                raise ParameterError(f"{name} must be positive")
        if self.tau not in (1, -1) or self.eta not in (1, -1):
            raise ParameterError("tau and eta must be +1 or -1")
        if self.field < 0:
            raise ParameterError("field is a magnitude and must be non-negative")
        if self.n_monopole is not None and self.n_monopole <= 0:
            raise ParameterError("the monopole number must be a positive integer")


def beta_from_units(units: PhysicalUnits) -> float:
    """``beta = tau q |B| / (hbar c)``."""
    return units.tau * units.q * units.field / (units.hbar * units.c)


def dirac_field(n: int, kappa: float, charge: float, hbar: float = 1.0) -> float:
    """Field magnitude allowed by Dirac quantization: ``|B| = hbar n |kappa| / |e|``."""
    if n <= 0:
        raise ParameterError("the monopole number must be a positive integer")
    return hbar * n * abs(kappa) / abs(charge)


def physical_spectrum(units: PhysicalUnits, kappa: float, l: Number) -> float:
    """``E = (|q| hbar |B| / m0 c)(l + 1/2) + (hbar**2 kappa / 2 m0) l (l+1)``."""
    l = float(l)
    cyclotron = abs(units.q) * units.hbar * units.field / (units.m0 * units.c)
    return cyclotron * (l + 0.5) + units.hbar**2 * float(kappa) / (2 * units.m0) * l * (l + 1)


def monopole_spectrum(units: PhysicalUnits, l: Number, e_charge: Optional[float] = None) -> float:
    """Spectrum for a Dirac-quantized field, curvature eliminated through ``n``.

    ``E = (|q| hbar |B| / m0 c)(l + 1/2) + eta (hbar |e| |B| / 2 m0 c n) l (l+1)``
    where ``e`` is the elementary charge (defaults to ``q``).
    """
    if units.n_monopole is None:
        raise ParameterError("the monopole number n is required")
    e = abs(units.q if e_charge is None else e_charge)
    l = float(l)
    first = abs(units.q) * units.hbar * units.field / (units.m0 * units.c)
    second = units.hbar * e * units.field / (2 * units.m0 * units.c * units.n_monopole)
    return first * (l + 0.5) + units.eta * second * l * (l + 1)
