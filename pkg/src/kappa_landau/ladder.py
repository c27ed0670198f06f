"""Inter-level ladder operators, annihilation lines and moving states.

Multiplying the radial equation by ``S(r)**2`` gives the level operator::

    E_l = S**2 d**2 + S C d - (m - beta vers)**2 + 2 eps_l S**2

which factorizes as ``E_l = A_l^+ A_l^- + delta_l`` with the first-order
factors ``A_l^(+-) = S d +- g_l`` and::

    g_l(r) = (2 beta l + kappa l**2 + beta m)/(beta + kappa l) - (beta + kappa l) vers(r)

Written this way ``g_l`` is regular at ``kappa = 0``, where it reduces to
``2l + m - beta r**2/2``; the split into ``mu_l cos + nu_l`` is only defined
for ``kappa != 0``.

The kernels of ``A_l^-`` and ``A_{l+1}^+`` are explicit:
``H**a C(r/2)**e`` with ``H = S(r/2)/C(r/2)`` (a Gaussian replaces the
``C(r/2)`` factor in the plane), which is how normalizability on each
annihilation line is decided and cross-checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from . import geometry as geo
from .errors import ParameterError, PoleError
from .representation import ModelParams, RadialFunction, RadialOperator
from .spectrum import LOWEST, StateLabel, default_family, uir_coefficient

__all__ = [
    "FactorizationCoeffs",
    "AnnihilationLine",
    "BoundaryClass",
    "KernelExponents",
    "factorization_coeffs",
    "ladder_operator",
    "level_operator",
    "ladder_commutator",
    "rescaled_commutator",
    "kernel_exponents",
    "kernel_is_normalizable",
    "vacuum_state",
    "annihilation_lines",
    "lowest_line_level",
    "in_lattice",
    "normalizable_lattice",
    "escaping_images",
    "spectral_flow_index",
]

LINE_IDS = ("i", "ii", "iii", "iv", "i'", "ii'", "iii'", "iv'")


def _exact_or_float(x):
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float) and x.is_integer():
        return Fraction(int(x))
    return float(x)


def _numbers(params: ModelParams, l, m):
    """``(kappa, beta, l, m)`` as Fractions when all inputs are rational."""
    l, m = _exact_or_float(l), _exact_or_float(m)
    if isinstance(l, Fraction) and isinstance(m, Fraction):
        return params.kappa, params.beta, l, m
    return params.k, params.b, float(l), float(m)


@dataclass(frozen=True)
class FactorizationCoeffs:
    """Coefficients of ``A_l^(+-) = S d +- (mu_l C + nu_l)``.

    ``mu_l`` and ``nu_l`` are ``None`` in the plane, where only their
    combination survives; ``g_const - g_vers * vers(r)`` is the same
    function written in a form valid for every curvature.
    """

    mu_l: Optional[object]
    nu_l: Optional[object]
    delta_l: object
    g_const: object
    g_vers: object


def factorization_coeffs(params: ModelParams, l, m) -> FactorizationCoeffs:
    """Exact coefficients of the factorization at level ``l`` in sector ``m``.

    Rational inputs give ``Fraction`` outputs.  In the plane the dedicated
    branch ``delta_l = 4 l**2 + 4 l m`` is used.
    """
    kap, bet, l, m = _numbers(params, l, m)
    s = bet + kap * l
    if s == 0:
        raise PoleError(f"beta + kappa l vanishes at l = {l}: the factorization degenerates")
    if kap == 0:
        return FactorizationCoeffs(None, None, 4 * l * l + 4 * l * m, 2 * l + m, bet)
    delta = 2 * bet * l * (m + l) / s + bet**2 * (m + l) ** 2 / s**2 - m * m + l * l
    mu = bet / kap + l
    nu = -bet / kap + bet * (m + l) / s
    return FactorizationCoeffs(mu, nu, delta, (2 * bet * l + kap * l * l + bet * m) / s, s)


def _g_functions(params: ModelParams, l, m):
    fc = factorization_coeffs(params, l, m)
    k = params.k
    c0, cv = float(fc.g_const), float(fc.g_vers)

    def g(r):
        return c0 - cv * geo.versine(k, r)

    def dg(r):
        return -cv * geo.kappa_sin(k, r)

    return g, dg


def ladder_operator(params: ModelParams, l, m, sign: str) -> RadialOperator:
    """``A_l^+`` (``sign="+"``) or ``A_l^-``; both keep the sector ``m``.

    ``A_l^-`` maps the level-``l`` eigenfunction of sector ``m`` to a multiple
    of the level ``l - 1`` one, and ``A_l^+`` goes back up.
    """
    if sign not in ("+", "-"):
        raise ParameterError(f"sign must be '+' or '-', got {sign!r}")
    g, dg = _g_functions(params, l, m)
    k = params.k
    sg = 1.0 if sign == "+" else -1.0
    return RadialOperator(
        float(m), 0,
        c1=lambda r: geo.kappa_sin(k, r),
        c0=lambda r: sg * g(r),
        c1_prime=lambda r: geo.kappa_cos(k, r),
        c0_prime=lambda r: sg * dg(r),
        name=f"A{sign}_{l}",
    )


def level_operator(params: ModelParams, l, m) -> RadialOperator:
    """``E_l = S**2 d**2 + S C d - (m - beta vers)**2 + 2 eps_l S**2``.

    ``eps_l = kappa l (l+1)/2 + beta (l + 1/2)`` is taken at real ``l`` so
    that moving states are covered; the eigenfunctions of level ``l`` are
    annihilated.
    """
    k, b = params.k, params.b
    l, m = float(l), float(m)
    eps = k * l * (l + 1) / 2 + b * (l + 0.5)

    def c0(r):
        s = geo.kappa_sin(k, r)
        return -(m - b * geo.versine(k, r)) ** 2 + 2 * eps * s * s

    return RadialOperator(
        m, 0,
        c2=lambda r: geo.kappa_sin(k, r) ** 2,
        c1=lambda r: geo.kappa_sin(k, r) * geo.kappa_cos(k, r),
        c0=c0,
        name=f"E_{l}",
    )


def ladder_commutator(params: ModelParams, l, m):
    """``delta_l - delta_{l+1}``, the value of ``A^-_{l+1} A^+_{l+1} - A^+_l A^-_l`` on level ``l``."""
    return (factorization_coeffs(params, l, m).delta_l
            - factorization_coeffs(params, l + 1, m).delta_l)


def rescaled_commutator(params: ModelParams, l, m):
    """Commutator of the rescaled pair ``(beta + kappa l) A_l^(+-)``.

    On level ``l`` it evaluates to
    ``(beta + kappa l)**2 delta_l - (beta + kappa (l+1))**2 delta_{l+1}``, a
    polynomial of degree three in ``l`` for fixed ``m``.
    """
    kap, bet, l, m = _numbers(params, l, m)
    lo = factorization_coeffs(params, l, m).delta_l
    hi = factorization_coeffs(params, l + 1, m).delta_l
    return (bet + kap * l) ** 2 * lo - (bet + kap * (l + 1)) ** 2 * hi


# --- kernels of the first-order factors --------------------------------------

@dataclass(frozen=True)
class KernelExponents:
    """``psi = H**origin * envelope`` where the envelope is ``C(r/2)**far`` (``kappa != 0``)
    or ``exp(far * r**2)`` in the plane."""

    origin: float
    far: float
    kappa: float


def kernel_exponents(params: ModelParams, l, m, which: str) -> KernelExponents:
    """Exponents of the kernel of ``A_l^-`` (``which="-"``) or ``A_{l+1}^+`` (``which="+"``)."""
    if which == "-":
        fc, sgn = factorization_coeffs(params, l, m), 1.0
    elif which == "+":
        fc, sgn = factorization_coeffs(params, _exact_or_float(l) + 1, m), -1.0
    else:
        raise ParameterError(f"which must be '+' or '-', got {which!r}")
    k = params.k
    a0, s = float(fc.g_const), float(fc.g_vers)
    far = -s / 4 if k == 0 else 2 * s / k
    return KernelExponents(sgn * a0, sgn * far, k)


def kernel_is_normalizable(exps: KernelExponents) -> bool:
    """Regular at the origin and square integrable with the weight ``S``.

    A non-negative power at the origin is required (negative powers are
    either not square integrable or not smooth at the pole).  Far away:
    on the sphere the antipodal power ``far - origin`` must also be
    non-negative; on the hyperbolic plane ``C(r/2)**far`` must beat the
    growth of ``S``, i.e. ``far < -1``; in the plane the Gaussian must decay.
    """
    eps = 1e-12
    if exps.origin < -eps:
        return False
    if exps.kappa > 0:
        return exps.far - exps.origin >= -eps
    if exps.kappa < 0:
        return exps.far < -1 - eps
    return exps.far < 0


def vacuum_state(params: ModelParams, l, m, which: str = "-") -> RadialFunction:
    """Unnormalized kernel of ``A_l^-`` (or of ``A_{l+1}^+``) with analytic derivatives."""
    exps = kernel_exponents(params, l, m, which)
    k = params.k
    a, e = exps.origin, exps.far
    g, dg = _g_functions(params, _exact_or_float(l) + (1 if which == "+" else 0), m)
    sg = 1.0 if which == "-" else -1.0

    def value(r):
        r = np.asarray(r, dtype=float)
        sh, ch = geo.kappa_sin(k, r / 2), geo.kappa_cos(k, r / 2)
        if k == 0:
            return (r / 2) ** a * np.exp(e * r * r)
        return (sh / ch) ** a * ch**e

    # S psi' = sg g psi, hence psi' = sg (g/S) psi
    def d1(r):
        r = np.asarray(r, dtype=float)
        return sg * g(r) / geo.kappa_sin(k, r) * value(r)

    def d2(r):
        r = np.asarray(r, dtype=float)
        s, c = geo.kappa_sin(k, r), geo.kappa_cos(k, r)
        ratio = sg * g(r) / s
        dratio = sg * (dg(r) * s - g(r) * c) / (s * s)
        return (dratio + ratio * ratio) * value(r)

    return RadialFunction(float(m), value, d1, d2)


# --- annihilation lines ---------------------------------------------------------

@dataclass(frozen=True)
class AnnihilationLine:
    """The line ``l = slope * m + intercept`` in the ``(m, l)`` plane.

    ``normalizable_condition(m)`` tells whether the kernel state at ``m`` is
    square integrable; ``operator`` is ``"-"`` for ``delta_l = 0`` lines and
    ``"+"`` for ``delta_{l+1} = 0`` lines.
    """

    id: str
    slope: int
    intercept: object
    operator: str
    normalizable_condition: Callable[[float], bool]
    description: str = ""

    def l_of_m(self, m):
        return self.slope * _exact_or_float(m) + self.intercept


def annihilation_lines(params: ModelParams, which: str = "-") -> List[AnnihilationLine]:
    """Lines where ``A^-`` (or ``A^+``) has solutions of the level equation as kernel.

    Requires ``beta > 0``.  The ``A^-`` predicates are the closed-form ranges
    below (``N = 2 beta/kappa``); the ``A^+`` lines follow from the symmetry
    ``l -> -l - N - 1`` and their predicates come from the kernel exponents.

    ========  ==============  ==============  ======================  =====
    line      l               kappa = 0       kappa > 0               kappa < 0
    ========  ==============  ==============  ======================  =====
    i         -m              m <= 0          m <= 0                  beta/kappa + 1/2 < m <= 0
    ii        0               m >= 0          0 <= m <= N             m >= 0
    iii       -N              absent          never                   never
    iv        m - N           absent          m >= N                  never
    ========  ==============  ==============  ======================  =====
    """
    if not params.beta > 0:
        raise ParameterError("annihilation lines are tabulated for beta > 0")
    kap, bet = params.kappa, params.beta
    if which == "-":
        if kap == 0:
            return [
                AnnihilationLine("i", -1, Fraction(0), "-", lambda m: m <= 0, "l = -m"),
                AnnihilationLine("ii", 0, Fraction(0), "-", lambda m: m >= 0, "l = 0"),
            ]
        n = 2 * bet / kap
        if kap > 0:
            return [
                AnnihilationLine("i", -1, Fraction(0), "-", lambda m: m <= 0, "l = -m"),
                AnnihilationLine("ii", 0, Fraction(0), "-", lambda m: 0 <= m <= n, "l = 0"),
                AnnihilationLine("iii", 0, -n, "-", lambda m: False, "l = -2 beta/kappa"),
                AnnihilationLine("iv", 1, -n, "-", lambda m: m >= n, "l = m - 2 beta/kappa"),
            ]
        low = bet / kap + Fraction(1, 2)
        return [
            AnnihilationLine("i", -1, Fraction(0), "-", lambda m: low < m <= 0, "l = -m"),
            AnnihilationLine("ii", 0, Fraction(0), "-", lambda m: m >= 0, "l = 0"),
            AnnihilationLine("iii", 0, -n, "-", lambda m: False, "l = -2 beta/kappa"),
            AnnihilationLine("iv", 1, -n, "-", lambda m: False, "l = m - 2 beta/kappa"),
        ]
    if which != "+":
        raise ParameterError(f"which must be '+' or '-', got {which!r}")

    def predicate(slope, intercept):
        def check(m):
            l = slope * _exact_or_float(m) + intercept
            if params.kappa != 0 and params.beta + params.kappa * (_exact_or_float(l) + 1) == 0:
                return False
            return kernel_is_normalizable(kernel_exponents(params, l, m, "+"))
        return check

    specs = [("iii'", 0, Fraction(-1), "l = -1"), ("iv'", -1, Fraction(-1), "l = -m - 1")]
    if kap != 0:
        n = 2 * bet / kap
        specs = [("i'", 1, -n - 1, "l = m - 2 beta/kappa - 1"),
                 ("ii'", 0, -n - 1, "l = -2 beta/kappa - 1")] + specs
    return [AnnihilationLine(i, s, c, "+", predicate(s, c), d) for i, s, c, d in specs]


# --- moving states ------------------------------------------------------------------

@dataclass(frozen=True)
class BoundaryClass:
    """Twisted boundary condition ``Psi(theta + 2 pi) = exp(2 pi i alpha) Psi``.

    ``rho`` labels the equivalent class of gauge potentials
    ``beta vers/kappa + rho``; moving the constant into the boundary
    condition identifies ``alpha = rho`` (mod 1).
    """

    alpha: float = 0.0
    rho: Optional[float] = None

    def __post_init__(self):
        if not 0 <= self.alpha < 1:
            raise ParameterError(f"alpha must lie in [0, 1), got {self.alpha}")
        if self.rho is None:
            object.__setattr__(self, "rho", self.alpha)
        elif not 0 <= self.rho < 1:
            raise ParameterError(f"rho must lie in [0, 1), got {self.rho}")
        elif abs(self.rho - self.alpha) > 1e-15:
            raise ParameterError("alpha and rho describe different classes")

    @classmethod
    def from_rho(cls, rho: float) -> "BoundaryClass":
        rho = rho % 1.0
        return cls(rho, rho)


def _alpha(alpha) -> float:
    return alpha.alpha if isinstance(alpha, BoundaryClass) else float(alpha)


def _reflected(params: ModelParams):
    """Work with ``beta > 0``; the highest-weight picture is the mirror ``m -> -m``."""
    if params.beta > 0:
        return params, 1
    if params.beta < 0:
        return ModelParams(params.kappa, -params.beta, strict=params.strict), -1
    raise ParameterError("moving-state lattices need a non-zero field")


def lowest_line_level(params: ModelParams, m) -> Optional[float]:
    """Level of the normalizable ``A^-`` vacuum in sector ``m`` (``None`` if there is none)."""
    pp, sgn = _reflected(params)
    m = sgn * float(m)
    best = None
    for line in annihilation_lines(pp, "-"):
        if line.normalizable_condition(m):
            l = float(line.l_of_m(m))
            if l >= -1e-12 and (best is None or l < best):
                best = max(l, 0.0)
    return best


def _level_ok(params: ModelParams, l: float) -> bool:
    if params.kappa < 0:
        return l < abs(params.b) / abs(params.k) - 0.5 - 1e-12
    return True


def in_lattice(params: ModelParams, alpha, l, m, tol: float = 1e-9) -> bool:
    """Whether ``(l, m)`` is a normalizable moving state for the boundary class ``alpha``."""
    a = _alpha(alpha)
    frac = (float(m) - a) % 1.0
    if min(frac, 1 - frac) > tol:
        return False
    l0 = lowest_line_level(params, m)
    if l0 is None:
        return False
    steps = float(l) - l0
    if steps < -tol or abs(steps - round(steps)) > tol:
        return False
    return _level_ok(params, float(l))


def normalizable_lattice(params: ModelParams, alpha=0.0, l_max: float = 2,
                         m_window: Tuple[int, int] = (-6, 6)) -> List[StateLabel]:
    """Normalizable states with ``m = n + alpha`` inside the window.

    Each sector ``m`` contributes the vacuum of its normalizable annihilation
    line and the ladder tower ``l0, l0 + 1, ...`` above it, up to ``l_max``
    (and below the square-integrability bound when ``kappa < 0``).  At
    ``alpha = 0`` this reproduces the lattice of the unitary representations.
    """
    a = _alpha(alpha)
    fam = default_family(params)
    out = []
    for n in range(int(m_window[0]) - 1, int(m_window[1]) + 1):
        m = n + a
        if not m_window[0] <= m <= m_window[1]:
            continue
        l0 = lowest_line_level(params, m)
        if l0 is None:
            continue
        l = l0
        while l <= l_max + 1e-12 and _level_ok(params, l):
            lv = int(round(l)) if abs(l - round(l)) < 1e-12 else l
            mv = int(round(m)) if abs(m - round(m)) < 1e-12 else m
            out.append(StateLabel(fam, lv, mv))
            l += 1
    return sorted(out, key=lambda s: (float(s.l), float(s.m)))


def _move_targets(params: ModelParams, l, m) -> Dict[str, Tuple[float, float, bool]]:
    """Images of ``(l, m)`` under ``J^(+-)`` and ``A^(+-)`` and whether each is non-zero."""
    fam = default_family(params)
    l, m = float(l), float(m)
    out = {}
    for sign, dm in (("+", 1), ("-", -1)):
        try:
            nonzero = uir_coefficient(params, fam, l, m, sign) > 1e-12
        except Exception:
            nonzero = True
        out["J" + sign] = (l, m + dm, nonzero)
    try:
        down = abs(float(factorization_coeffs(params, l, m).delta_l)) > 1e-9
    except PoleError:
        down = False
    try:
        up = abs(float(factorization_coeffs(params, l + 1, m).delta_l)) > 1e-9
    except PoleError:
        up = False
    out["A-"] = (l - 1, m, down)
    out["A+"] = (l + 1, m, up)
    return out


def escaping_images(params: ModelParams, alpha, l_max: float = 2,
                    m_window: Tuple[int, int] = (-6, 6)):
    """Lattice states whose non-zero image under a shift or ladder operator is not normalizable.

    Images that merely leave the finite window are ignored.  Returns a list
    of ``(state, operator_name, (l, m))``.
    """
    out = []
    for st in normalizable_lattice(params, alpha, l_max, m_window):
        for name, (l, m, nonzero) in _move_targets(params, st.l, st.m).items():
            if not nonzero or l < -1e-12:
                continue
            if l > l_max + 1e-12 or not m_window[0] <= m <= m_window[1]:
                continue
            if not in_lattice(params, alpha, l, m):
                out.append((st, name, (l, m)))
    return out


def spectral_flow_index(params: ModelParams, level: int = 0, delta: float = 1e-6) -> int:
    """States joining minus states leaving level ``level`` over one period of ``alpha``.

    Moving states leave the level just after ``alpha = 0`` and arrive just
    before ``alpha = 1``; both are counted as the states at distance about
    ``delta`` from the level.  The sector window grows with the level and
    the flux so that every contributing column is included.
    """
    flux = 0 if params.kappa == 0 else abs(int(math.ceil(abs(params.b / params.k))))
    span = 2 * (level + 2) + 2 * flux
    window = (-span, span)
    l_max = level + 1

    def near(alpha):
        states = normalizable_lattice(params, alpha, l_max, window)
        return sum(1 for s in states if delta / 2 < abs(float(s.l) - level) < 2 * delta)

    leaving = near(delta)
    joining = near(1 - delta)
    return joining - leaving
