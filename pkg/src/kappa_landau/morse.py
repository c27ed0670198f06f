"""Horocyclic separation on the hyperbolic plane and the Morse reduction.

With ``k = sqrt(-kappa)`` and horocyclic coordinates ``(a, b)`` the Landau
wavefunction separates as ``Phi = exp(i phi(a, b)) psi(a) exp(i lambda b)``.
The ``a`` equation is::

    -psi'' - k psi' + V(a) psi = E psi,
    V(a) = exp(-2ka) (beta (exp(ka) - 1) - k lambda)**2 / k**2

with ``E`` twice the Landau energy.  Writing ``psi = exp(-k a/2) chi`` and
translating ``a = x + a0`` with ``exp(k a0) = (beta + k lambda)/beta`` gives
the Morse problem::

    -chi'' + (beta**2/k**2)(exp(-2kx) - 2 exp(-kx)) chi = E' chi,
    E' = E - beta**2/|kappa| + kappa/4

whose bound states ``E' = -k**2 s**2`` have ``s = |beta|/k**2 - l - 1/2 > 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy.linalg import eigh_tridiagonal

from . import geometry as geo
from . import special
from .errors import DomainError, ParameterError
from .representation import ModelParams

__all__ = [
    "MorseReduction",
    "MorseLevel",
    "ReducedODE",
    "horocyclic_potential",
    "landau_gauge_potential",
    "straightening_term",
    "separation_phase",
    "separation_integrand",
    "reduced_ode_coefficients",
    "morse_shift",
    "continuum_threshold",
    "morse_reduction",
    "morse_discrete_spectrum",
    "morse_level_index",
    "morse_potential",
    "morse_eigenfunction",
    "separated_eigenfunction",
    "confluent_parameters",
    "reduced_ode_eigenvalues",
]


def _require_hyperbolic(params: ModelParams) -> float:
    if not params.kappa < 0:
        raise ParameterError("horocyclic separation needs kappa < 0")
    return math.sqrt(-params.k)


# --- gauge potentials and the separating phase --------------------------------------

def horocyclic_potential(params: ModelParams, a, b):
    """``(V_a, V_b)``: the polar-chart potential pulled back to horocyclic coordinates.

    With ``D = 2 + 2 cosh(ka) - kappa b**2 exp(ka)``::

        V_a = 2 kappa beta b / D
        V_b = beta (exp(2ka)(1 - kappa b**2) - 1) / (k D)

    and ``d_a V_b - d_b V_a = beta exp(ka)``, the constant field times the
    area element.
    """
    k = _require_hyperbolic(params)
    kap, bet = params.k, params.b
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    ek = np.exp(k * a)
    den = 2 + 2 * np.cosh(k * a) - kap * b * b * ek
    va = 2 * kap * bet * b / den
    vb = bet * (ek * ek * (1 - kap * b * b) - 1) / (k * den)
    return _out(va), _out(vb)


def landau_gauge_potential(params: ModelParams, a, b):
    """``(0, beta (exp(ka) - 1)/k)``: the gauge in which the ``b`` direction is free."""
    k = _require_hyperbolic(params)
    a = np.asarray(a, dtype=float)
    return _out(0 * a + 0 * np.asarray(b, dtype=float)), _out(params.b * np.expm1(k * a) / k)


def straightening_term(params: ModelParams, a, b):
    """Multiplicative part ``beta x1/(1 + x0)`` of the generator along horocycles.

    In the pulled-back gauge the generator ``J02 + k J12`` is
    ``-i d_b + beta x1/(1 + x0)``; conjugating by the separation phase removes
    the second term.
    """
    _require_hyperbolic(params)
    pt = geo.embed_horocyclic(params.k, a, b)
    return _out(params.b * pt.x1 / (1 + pt.x0))


def separation_integrand(params: ModelParams, a, b):
    """``d phi/d b``, the integrand whose ``b`` primitive is the separation phase."""
    return _out(-np.asarray(straightening_term(params, a, b)))


def separation_phase(params: ModelParams, a, b):
    """``phi(a, b) = (beta/k**2)(k b - 2 arctan(k b exp(ka)/(1 + exp(ka))))``.

    ``phi(a, 0) = 0`` and ``d_b phi = -beta x1/(1 + x0)``.
    """
    k = _require_hyperbolic(params)
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    ek = np.exp(k * a)
    return _out(params.b / k**2 * (k * b - 2 * np.arctan(k * b * ek / (1 + ek))))


def _out(x):
    x = np.asarray(x)
    return float(x) if x.ndim == 0 else x


# --- the one-dimensional problem ------------------------------------------------------

@dataclass(frozen=True)
class ReducedODE:
    """``c2 psi'' + c1 psi' + V(a) psi = E psi`` with ``c2 = -1``, ``c1 = -k``."""

    kappa: float
    beta: float
    lambda_sep: float
    c2: float
    c1: float

    @property
    def k(self) -> float:
        return math.sqrt(-self.kappa)

    def potential(self, a):
        a = np.asarray(a, dtype=float)
        k = self.k
        return _out(np.exp(-2 * k * a) * (self.beta * np.expm1(k * a) - k * self.lambda_sep) ** 2
                    / k**2)

    def potential_zero(self) -> Optional[float]:
        """The point where the bracket ``beta (exp(ka) - 1) - k lambda`` vanishes."""
        arg = 1 + self.k * self.lambda_sep / self.beta if self.beta != 0 else -1
        return math.log(arg) / self.k if arg > 0 else None

    def residual(self, psi: Callable, energy_e: float, a, d1: Callable = None,
                 d2: Callable = None, h: float = 1e-3):
        """``c2 psi'' + c1 psi' + V psi - E psi`` on ``a`` (finite differences by default)."""
        from .numerics import fd_derivative

        a = np.asarray(a, dtype=float)
        p1 = d1(a) if d1 is not None else fd_derivative(psi, a, 1, h)
        p2 = d2(a) if d2 is not None else fd_derivative(psi, a, 2, h)
        return self.c2 * p2 + self.c1 * p1 + (self.potential(a) - energy_e) * psi(a)


def reduced_ode_coefficients(params: ModelParams, lambda_sep: float) -> ReducedODE:
    """The equation for ``psi(a)`` after separating ``exp(i lambda b)``.

    The potential tends to ``(beta a - lambda)**2`` as ``kappa -> 0``: a
    harmonic oscillator of frequency ``|beta|`` centred at ``lambda/beta``.
    """
    k = _require_hyperbolic(params)
    return ReducedODE(params.k, params.b, float(lambda_sep), -1.0, -k)


def morse_shift(params: ModelParams, lambda_sep: float) -> float:
    """Translation ``a0`` with ``exp(k a0) = (beta + k lambda)/beta``.

    The closed-form reduction needs ``(beta + k lambda)/beta > 0``, which
    holds in particular whenever ``lambda`` has the sign of ``beta``.
    """
    k = _require_hyperbolic(params)
    bet = params.b
    if bet == 0:
        raise DomainError("the Morse reduction needs a non-zero field")
    ratio = (bet + k * lambda_sep) / bet
    if ratio <= 0:
        raise DomainError(
            f"(beta + k lambda)/beta = {ratio} <= 0: no Morse form for this separation constant")
    return math.log(ratio) / k


def continuum_threshold(params: ModelParams, convention: str = "E"):
    """Bottom of the continuous spectrum.

    ``convention="E"`` gives ``beta**2/|kappa| - kappa/4`` for the
    separated equation; ``"landau"`` halves it to match the Landau energies.
    Exact for rational parameters.
    """
    _require_hyperbolic(params)
    value = params.beta**2 / abs(params.kappa) - params.kappa / 4
    if convention == "E":
        return value
    if convention == "landau":
        return value / 2
    raise ParameterError(f"unknown energy convention {convention!r}")


@dataclass(frozen=True)
class MorseReduction:
    """Parameters of one Morse problem: ``E' = E - beta**2/|kappa| + kappa/4``, ``s = sqrt(-E')/k``."""

    lambda_sep: float
    E: object
    E_prime: object
    s: Optional[float]
    xi_scale: float


def morse_reduction(params: ModelParams, energy_e, lambda_sep: float = 0.0) -> MorseReduction:
    """Shifted energy, Morse exponent and the scale of ``xi = xi_scale exp(-k x)``."""
    k = _require_hyperbolic(params)
    e = energy_e if isinstance(energy_e, (int, Fraction)) else float(energy_e)
    if isinstance(e, float):
        e_prime = e - params.b**2 / abs(params.k) + params.k / 4
    else:
        e_prime = Fraction(e) - params.beta**2 / abs(params.kappa) + params.kappa / 4
    s = math.sqrt(-float(e_prime)) / k if e_prime < 0 else None
    return MorseReduction(float(lambda_sep), e, e_prime, s, 2 * abs(params.b) / k**2)


def morse_level_index(params: ModelParams, s) -> object:
    """``l = |beta|/|kappa| - s - 1/2``; a non-negative integer on the discrete branch."""
    _require_hyperbolic(params)
    if isinstance(s, (int, Fraction)):
        return abs(params.beta) / abs(params.kappa) - Fraction(s) - Fraction(1, 2)
    return abs(params.b) / abs(params.k) - float(s) - 0.5


@dataclass(frozen=True)
class MorseLevel:
    """One bound state: Landau energy ``energy = E/2``, with ``E``, ``E'`` and ``s``."""

    l: int
    energy: Fraction
    E: Fraction
    E_prime: Fraction
    s: Fraction


def morse_discrete_spectrum(params: ModelParams) -> List[MorseLevel]:
    """Bound states ``0 <= l < |beta|/|kappa| - 1/2`` in exact arithmetic.

    ``s = |beta|/|kappa| - l - 1/2``, ``E' = -|kappa| s**2`` and
    ``E = E' + beta**2/|kappa| - kappa/4``; the Landau energy is ``E/2``.
    """
    _require_hyperbolic(params)
    akap, abet = abs(params.kappa), abs(params.beta)
    out = []
    l = 0
    while True:
        s = abet / akap - l - Fraction(1, 2)
        if s <= 0:
            return out
        e_prime = -akap * s * s
        e = e_prime + abet**2 / akap - params.kappa / 4
        out.append(MorseLevel(l, e / 2, e, e_prime, s))
        l += 1


def confluent_parameters(params: ModelParams, level: MorseLevel) -> Tuple[int, float]:
    """``(a, c)`` of ``M(a, c, xi)`` solving ``xi f'' + (c - xi) f' - a f = 0``: ``(-l, 2s + 1)``.

    The planar radial equation has the same form with ``c = m + 1``.
    """
    return -level.l, float(2 * level.s + 1)


def morse_potential(params: ModelParams, x):
    """``(beta**2/k**2)(exp(-2kx) - 2 exp(-kx))``, with minimum ``-beta**2/k**2`` at ``x = 0``."""
    k = _require_hyperbolic(params)
    e = np.exp(-k * np.asarray(x, dtype=float))
    return _out(params.b**2 / k**2 * (e * e - 2 * e))


def morse_eigenfunction(params: ModelParams, l: int, normalized: bool = True):
    """Bound state ``chi(x) = exp(-xi/2) xi**s M(-l, 2s+1, xi)`` of the Morse problem.

    ``xi = (2|beta|/k**2) exp(-kx)``.  Returns ``(chi, chi', chi'')`` as
    callables with analytic derivatives; ``normalized`` scales to unit
    ``L2(dx)`` norm.
    """
    k = _require_hyperbolic(params)
    levels = morse_discrete_spectrum(params)
    if not 0 <= l < len(levels):
        raise DomainError(f"level {l} is not a bound state (there are {len(levels)})")
    s = float(levels[l].s)
    scale = 2 * abs(params.b) / k**2
    coeffs = special.confluent_coefficients(l, 2 * s + 1, regularized=False)
    poly = np.polynomial.Polynomial(coeffs)
    dpoly, ddpoly = poly.deriv(), poly.deriv(2)

    def g_parts(xi):
        # g(xi) = exp(-xi/2) xi**s M(xi) and its xi-derivatives
        e = np.exp(-xi / 2) * xi**s
        m0, m1, m2 = poly(xi), dpoly(xi), ddpoly(xi)
        lg1 = -0.5 + s / xi
        lg2 = -s / xi**2
        g = e * m0
        g1 = e * (lg1 * m0 + m1)
        g2 = e * ((lg1 * lg1 + lg2) * m0 + 2 * lg1 * m1 + m2)
        return g, g1, g2

    def raw(x, order):
        x = np.asarray(x, dtype=float)
        xi = scale * np.exp(-k * x)
        g, g1, g2 = g_parts(xi)
        # d xi/dx = -k xi
        if order == 0:
            return g
        if order == 1:
            return -k * xi * g1
        return k * k * (xi * xi * g2 + xi * g1)

    norm = 1.0
    if normalized:
        # in xi the measure is dx = dxi/(k xi); integrate g**2/xi on (0, inf)
        from scipy.integrate import quad

        val, _ = quad(lambda t: g_parts(t)[0] ** 2 / t, 0, np.inf, limit=200, epsabs=0,
                      epsrel=1e-13)
        norm = 1 / math.sqrt(val / k)
    return tuple(
        (lambda x, o=o: _out(norm * raw(x, o))) for o in range(3)
    )


def separated_eigenfunction(params: ModelParams, l: int, lambda_sep: float = 0.0):
    """``psi(a) = exp(-k a/2) chi(a - a0)`` solving the separated equation with ``E = 2 E_l``."""
    k = _require_hyperbolic(params)
    a0 = morse_shift(params, lambda_sep)
    chi, chi1, chi2 = morse_eigenfunction(params, l)

    def psi(a):
        a = np.asarray(a, dtype=float)
        return _out(np.exp(-k * a / 2) * np.asarray(chi(a - a0)))

    def d1(a):
        a = np.asarray(a, dtype=float)
        return _out(np.exp(-k * a / 2) * (np.asarray(chi1(a - a0)) - k / 2 * np.asarray(chi(a - a0))))

    def d2(a):
        a = np.asarray(a, dtype=float)
        x = a - a0
        return _out(np.exp(-k * a / 2) * (np.asarray(chi2(x)) - k * np.asarray(chi1(x))
                                           + k * k / 4 * np.asarray(chi(x))))

    return psi, d1, d2


def reduced_ode_eigenvalues(params: ModelParams, lambda_sep: float = 0.0, count: int = 3,
                            a_range: Optional[Tuple[float, float]] = None,
                            points: int = 6000) -> np.ndarray:
    """Lowest eigenvalues ``E`` of the separated equation by finite differences.

    Substituting ``psi = exp(-ka/2) chi`` makes the operator symmetric,
    ``-chi'' + (k**2/4 + V) chi``, which is discretized on a uniform grid
    with Dirichlet ends and diagonalized as a tridiagonal matrix.  Returned
    values are in the ``E`` convention (twice the Landau energy).
    """
    ode = reduced_ode_coefficients(params, lambda_sep)
    k = ode.k
    if a_range is None:
        centre = ode.potential_zero() or 0.0
        width = 12.0 / math.sqrt(abs(params.b)) if params.b else 12.0
        a_range = (centre - width, centre + 2 * width)
    a = np.linspace(a_range[0], a_range[1], points + 2)[1:-1]
    h = a[1] - a[0]
    diag = 2 / h**2 + k * k / 4 + np.asarray(ode.potential(a))
    off = -np.ones(points - 1) / h**2
    return eigh_tridiagonal(diag, off, select="i", select_range=(0, count - 1),
                            eigvals_only=True)
