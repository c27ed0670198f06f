"""Magnetic symmetry generators, gauge potential and Hamiltonian in radial form.

Wavefunctions are separated as ``Psi(r, theta) = exp(i m theta) R(r)``.  Every
generator of the centrally extended algebra maps an ``m``-sector into an
``m + delta_m`` sector, so it is stored as a :class:`RadialOperator`
``c2 R'' + c1 R' + c0 R`` built for a fixed input sector.  The generators
that mix sectors (``J01``, ``J02``) are returned as a :class:`SectorSum` of
the two shift operators ``J+`` and ``J-``::

    J01 = (J+ + J-)/sqrt(2)        J02 = (J+ - J-)/(i sqrt(2))

The magnetic data enter through the single function ``Phi(r) = beta*vers(r)/S(r)``
(the angular part of the gauge term) and its derivative ``beta*vers/S**2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from . import geometry as geo
from .errors import ParameterError, QuantizationError

__all__ = [
    "to_fraction",
    "ModelParams",
    "InductionLabels",
    "RadialFunction",
    "RadialOperator",
    "SectorSum",
    "local_generator",
    "general_generator",
    "shift_operator",
    "gauge_potential",
    "field_strength",
    "hamiltonian",
    "casimir_hamiltonian",
]

SQRT2 = math.sqrt(2.0)


def to_fraction(value) -> Fraction:
    """Convert ints, decimal strings, ``"p/q"`` strings, floats or Fractions exactly.

    Floats are read through their shortest decimal representation, so ``0.3``
    becomes ``3/10`` rather than the nearest binary fraction.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParameterError("booleans are not valid numeric parameters")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ParameterError(f"non-finite parameter {value}")
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParameterError(f"cannot parse {value!r} as a rational number") from exc
    if isinstance(value, (np.integer, np.floating)):
        return to_fraction(value.item())
    raise ParameterError(f"unsupported parameter type {type(value).__name__}")


@dataclass(frozen=True)
class ModelParams:
    """Curvature ``kappa`` and field strength ``beta``, both stored as exact rationals.

    For ``kappa != 0`` the flux ratio ``2*beta/kappa`` must be an integer.  The
    check can be switched off with ``strict=False`` for computations that only
    use the Lie algebra (the hyperbolic Morse reduction, for instance), where
    any real field strength makes sense.
    """

    kappa: Fraction
    beta: Fraction
    strict: bool = field(default=True, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "kappa", to_fraction(self.kappa))
        object.__setattr__(self, "beta", to_fraction(self.beta))
        if self.strict and self.kappa != 0 and self.flux_ratio.denominator != 1:
            raise QuantizationError(
                f"2*beta/kappa = {self.flux_ratio} must be an integer when kappa != 0 "
                f"(kappa = {self.kappa}, beta = {self.beta})"
            )

    @property
    def flux_ratio(self) -> Optional[Fraction]:
        """``2*beta/kappa`` as an exact rational, or ``None`` when ``kappa = 0``."""
        if self.kappa == 0:
            return None
        return 2 * self.beta / self.kappa

    @property
    def is_quantized(self) -> bool:
        return self.kappa == 0 or self.flux_ratio.denominator == 1

    @property
    def k(self) -> float:
        """Curvature as a float."""
        return float(self.kappa)

    @property
    def b(self) -> float:
        """Field strength as a float."""
        return float(self.beta)

    @property
    def chart_radius(self) -> float:
        return geo.chart_radius(self.k)


@dataclass(frozen=True)
class InductionLabels:
    """Labels ``(lambda, b)`` of the one-dimensional representation used for induction."""

    lambda_ind: float
    b_ind: float

    def __post_init__(self):
        if abs(2 * self.lambda_ind - round(2 * self.lambda_ind)) > 1e-12:
            raise ParameterError("lambda must be a half integer")


Func = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class RadialFunction:
    """Radial profile ``R(r)`` of the sector ``exp(i m theta)``.

    ``d1`` and ``d2`` are optional analytic derivatives.  When missing,
    :meth:`derivative` falls back to Richardson-extrapolated central
    differences.
    """

    m: float
    value: Func
    d1: Optional[Func] = None
    d2: Optional[Func] = None

    def __call__(self, r):
        return self.value(r)

    def derivative(self, r, order: int = 1):
        from .numerics import fd_derivative

        if order == 0:
            return self.value(r)
        analytic = self.d1 if order == 1 else self.d2 if order == 2 else None
        if analytic is not None:
            return analytic(r)
        return fd_derivative(self.value, r, order=order)

    def scaled(self, factor) -> "RadialFunction":
        """Return ``factor * R`` keeping the analytic derivatives."""
        return RadialFunction(
            self.m,
            lambda r: factor * self.value(r),
            None if self.d1 is None else (lambda r: factor * self.d1(r)),
            None if self.d2 is None else (lambda r: factor * self.d2(r)),
        )


def _zero(r):
    return np.zeros_like(np.asarray(r, dtype=float))


@dataclass(frozen=True)
class RadialOperator:
    """``c2 R'' + c1 R' + c0 R`` acting on the sector ``m_in``, landing in ``m_in + delta_m``.

    A coefficient set to ``None`` is identically zero.  The optional ``*_prime``
    callables are the analytic derivatives of the coefficients; they make
    composition of two first-order operators exact and let :meth:`apply`
    propagate an analytic first derivative.
    """

    m_in: float
    delta_m: int
    c2: Optional[Func] = None
    c1: Optional[Func] = None
    c0: Optional[Func] = None
    c1_prime: Optional[Func] = None
    c0_prime: Optional[Func] = None
    name: str = ""

    @property
    def m_out(self) -> float:
        return self.m_in + self.delta_m

    @property
    def order(self) -> int:
        if self.c2 is not None:
            return 2
        if self.c1 is not None:
            return 1
        return 0

    def coefficients(self, r):
        """Evaluate ``(c2, c1, c0)`` on ``r`` (zeros for missing coefficients)."""
        return tuple(_zero(r) if c is None else c(r) for c in (self.c2, self.c1, self.c0))

    def _check_sector(self, f: RadialFunction):
        if abs(f.m - self.m_in) > 1e-9:
            raise ParameterError(
                f"operator {self.name or ''} built for sector m={self.m_in} applied to m={f.m}"
            )

    def evaluate(self, f: RadialFunction, r):
        """Return ``(op f)(r)`` without building a new function object."""
        self._check_sector(f)
        out = 0
        if self.c0 is not None:
            out = out + self.c0(r) * f.value(r)
        if self.c1 is not None:
            out = out + self.c1(r) * f.derivative(r, 1)
        if self.c2 is not None:
            out = out + self.c2(r) * f.derivative(r, 2)
        if np.isscalar(out) and out == 0:
            return _zero(r)
        return out

    def apply(self, f: RadialFunction) -> RadialFunction:
        """Apply the operator, producing a function of the output sector.

        For operators of order at most one with known coefficient derivatives
        and an input with an analytic second derivative, the result carries an
        analytic first derivative.
        """
        self._check_sector(f)
        op = self

        def value(r):
            return op.evaluate(f, r)

        d1 = None
        can_diff = (
            op.c2 is None
            and (op.c1 is None or op.c1_prime is not None)
            and (op.c0 is None or op.c0_prime is not None)
            and (op.c1 is None or f.d2 is not None)
        )
        if can_diff:

            def d1(r):
                out = _zero(r).astype(complex)
                if op.c1 is not None:
                    out = out + op.c1_prime(r) * f.derivative(r, 1) + op.c1(r) * f.d2(r)
                if op.c0 is not None:
                    out = out + op.c0_prime(r) * f.value(r) + op.c0(r) * f.derivative(r, 1)
                return out

        return RadialFunction(self.m_out, value, d1, None)

    def compose(self, inner: "RadialOperator") -> "RadialOperator":
        """Return ``self o inner`` (``inner`` acts first).

        Supported when both factors have order at most one; the result then
        has order at most two.  Coefficient derivatives of ``inner`` must be
        available whenever ``self`` differentiates.
        """
        if abs(self.m_in - inner.m_out) > 1e-9:
            raise ParameterError("sector mismatch in operator composition")
        if self.order > 1 or inner.order > 1:
            raise NotImplementedError("composition is implemented for first-order factors")
        a1, a0 = self.c1, self.c0
        b1, b0 = inner.c1, inner.c0
        if a1 is not None and ((b1 is not None and inner.c1_prime is None)
                               or (b0 is not None and inner.c0_prime is None)):
            raise ParameterError("inner operator lacks coefficient derivatives")

        def c2(r):
            return a1(r) * b1(r)

        def c1(r):
            out = _zero(r).astype(complex)
            if a1 is not None and b1 is not None:
                out = out + a1(r) * inner.c1_prime(r)
            if a1 is not None and b0 is not None:
                out = out + a1(r) * b0(r)
            if a0 is not None and b1 is not None:
                out = out + a0(r) * b1(r)
            return out

        def c0(r):
            out = _zero(r).astype(complex)
            if a1 is not None and b0 is not None:
                out = out + a1(r) * inner.c0_prime(r)
            if a0 is not None and b0 is not None:
                out = out + a0(r) * b0(r)
            return out

        return RadialOperator(
            inner.m_in,
            self.delta_m + inner.delta_m,
            c2 if (a1 is not None and b1 is not None) else None,
            c1,
            c0,
            name=f"({self.name})({inner.name})",
        )

    def __add__(self, other) -> "RadialOperator":
        if isinstance(other, RadialOperator):
            if abs(self.m_in - other.m_in) > 1e-9 or self.delta_m != other.delta_m:
                raise ParameterError("cannot add operators between different sectors")
            return RadialOperator(
                self.m_in,
                self.delta_m,
                _add(self.c2, other.c2),
                _add(self.c1, other.c1),
                _add(self.c0, other.c0),
                _add(self.c1_prime, other.c1_prime) if _both_or_none(self.c1, self.c1_prime, other.c1, other.c1_prime) else None,
                _add(self.c0_prime, other.c0_prime) if _both_or_none(self.c0, self.c0_prime, other.c0, other.c0_prime) else None,
                name=f"{self.name}+{other.name}",
            )
        # scalar shift of the zeroth-order coefficient
        const = other
        if self.delta_m != 0:
            raise ParameterError("adding a scalar requires a sector-preserving operator")
        old = self.c0
        return RadialOperator(
            self.m_in,
            0,
            self.c2,
            self.c1,
            (lambda r: const + _zero(r)) if old is None else (lambda r: old(r) + const),
            self.c1_prime,
            (self.c0_prime if self.c0_prime is not None else (_zero if old is None else None)),
            name=f"{self.name}+const",
        )

    __radd__ = __add__

    def scale(self, factor) -> "RadialOperator":
        def sc(c):
            return None if c is None else (lambda r: factor * c(r))

        return RadialOperator(
            self.m_in, self.delta_m, sc(self.c2), sc(self.c1), sc(self.c0),
            sc(self.c1_prime), sc(self.c0_prime), name=f"{factor}*{self.name}",
        )

    def __sub__(self, other) -> "RadialOperator":
        if isinstance(other, RadialOperator):
            return self + other.scale(-1)
        return self + (-other)


def _add(f, g):
    if f is None:
        return g
    if g is None:
        return f
    return lambda r: f(r) + g(r)


def _both_or_none(c_a, p_a, c_b, p_b) -> bool:
    ok_a = c_a is None or p_a is not None
    ok_b = c_b is None or p_b is not None
    return ok_a and ok_b


def _multiplication(m_in, value, name) -> RadialOperator:
    return RadialOperator(m_in, 0, None, None, lambda r: value + _zero(r), None, _zero, name=name)


@dataclass(frozen=True)
class SectorSum:
    """A sum of radial operators with possibly different sector shifts."""

    parts: tuple
    name: str = ""

    def apply(self, f: RadialFunction) -> dict:
        """Return ``{m_out: RadialFunction}`` for the image of ``f``."""
        out = {}
        for part in self.parts:
            img = part.apply(f)
            if img.m in out:
                prev = out[img.m]
                out[img.m] = RadialFunction(img.m, lambda r, a=prev, b=img: a(r) + b(r))
            else:
                out[img.m] = img
        return out

    @property
    def single(self) -> RadialOperator:
        if len(self.parts) != 1:
            raise ParameterError(f"{self.name} mixes several sectors")
        return self.parts[0]


# --- magnetic angular term -------------------------------------------------

def _local_phi(params: ModelParams):
    """``beta*vers/S`` and its derivative ``beta*vers/S**2``."""
    k, b = params.k, params.b

    def phi(r):
        return b * geo.versine(k, r) / geo.kappa_sin(k, r)

    def dphi(r):
        s = geo.kappa_sin(k, r)
        return b * geo.versine(k, r) / (s * s)

    return phi, dphi


def _general_phi(labels: InductionLabels, kappa: float):
    """``(lambda - (b/kappa) C)/S`` and its derivative ``(b/kappa - lambda C)/S**2``."""
    lam, b = labels.lambda_ind, labels.b_ind

    def phi(r):
        return (lam - (b / kappa) * geo.kappa_cos(kappa, r)) / geo.kappa_sin(kappa, r)

    def dphi(r):
        s = geo.kappa_sin(kappa, r)
        return (b / kappa - lam * geo.kappa_cos(kappa, r)) / (s * s)

    return phi, dphi


def _shift(kappa: float, phi, dphi, sign: int, m: float, name: str) -> RadialOperator:
    """``(i/sqrt2) (-d/dr + sign (m C/S + phi))`` from sector ``m`` to ``m + sign``."""
    pref = 1j / SQRT2

    def c0(r):
        c, s = geo.kappa_cos(kappa, r), geo.kappa_sin(kappa, r)
        return sign * pref * (m * c / s + phi(r))

    def c0p(r):
        s = geo.kappa_sin(kappa, r)
        return sign * pref * (-m / (s * s) + dphi(r))

    return RadialOperator(
        m, sign, None, lambda r: -pref + _zero(r), c0, _zero, c0p, name=name
    )


def shift_operator(params: ModelParams, sign: str, m: float) -> RadialOperator:
    """Raising (``sign="+"``) or lowering (``"-"``) operator on the sector ``m``.

    ``J+- = (J01 +- i J02)/sqrt(2)`` reduces to
    ``(i/sqrt2)(-R' +- (m C/S + beta vers/S) R)``.
    """
    s = _sign(sign)
    phi, dphi = _local_phi(params)
    return _shift(params.k, phi, dphi, s, m, f"J{sign}")


def _sign(sign) -> int:
    if sign in ("+", +1, "plus", "up"):
        return 1
    if sign in ("-", -1, "minus", "down"):
        return -1
    raise ParameterError(f"sign must be '+' or '-', got {sign!r}")


def _cartan_sum(up: RadialOperator, down: RadialOperator, which: str) -> SectorSum:
    if which == "J01":
        return SectorSum((up.scale(1 / SQRT2), down.scale(1 / SQRT2)), name="J01")
    return SectorSum((up.scale(-1j / SQRT2), down.scale(1j / SQRT2)), name="J02")


def local_generator(params: ModelParams, which: str, m: float) -> SectorSum:
    """Sector reduction of the extended generator ``which`` in {J01, J02, J12, B}."""
    if which == "J12":
        return SectorSum((_multiplication(m, float(m), "J12"),), name="J12")
    if which == "B":
        return SectorSum((_multiplication(m, -params.b, "B"),), name="B")
    if which in ("J01", "J02"):
        return _cartan_sum(shift_operator(params, "+", m), shift_operator(params, "-", m), which)
    raise ParameterError(f"unknown generator {which!r}")


def general_generator(labels: InductionLabels, kappa, which: str, m: float) -> SectorSum:
    """Generators induced from the character ``(lambda, b)`` (requires ``kappa != 0``).

    With ``lambda = b/kappa`` the result coincides with :func:`local_generator`
    for ``beta = b``.
    """
    kappa = float(to_fraction(kappa))
    if kappa == 0:
        raise ParameterError("the two-label generators have no flat limit; use local_generator")
    if which == "J12":
        return SectorSum((_multiplication(m, float(m), "J12"),), name="J12")
    if which == "B":
        return SectorSum((_multiplication(m, -labels.b_ind, "B"),), name="B")
    if which in ("J01", "J02"):
        phi, dphi = _general_phi(labels, kappa)
        up = _shift(kappa, phi, dphi, 1, m, "J+")
        down = _shift(kappa, phi, dphi, -1, m, "J-")
        return _cartan_sum(up, down, which)
    raise ParameterError(f"unknown generator {which!r}")


def gauge_potential(params: ModelParams, r):
    """Invariant potential in polar coordinates: ``(A_r, A_theta) = (0, beta vers(r))``."""
    a_theta = params.b * np.asarray(geo.versine(params.k, r))
    a_r = np.zeros_like(a_theta)
    if np.ndim(r) == 0:
        return 0.0, float(a_theta)
    return a_r, a_theta


def field_strength(params: ModelParams, r):
    """``F_{r theta} = d A_theta/dr = beta S(r)``: constant intensity beta per unit area."""
    return params.b * geo.measure_weight(params.k, r)


def hamiltonian(params: ModelParams, m: float, form: str = "minimal") -> RadialOperator:
    """Radial Landau Hamiltonian on the sector ``m`` (real ``m`` allowed).

    ``form="minimal"`` is the covariant form
    ``-R''/2 - (C/2S) R' + (m - beta vers)**2/(2 S**2) R``.
    ``form="expanded"`` groups the zeroth-order term the way it arises from the
    Casimir written with the generators: ``m**2/(2S**2) - m beta (1 - vers C/S**2)
    + beta**2 vers**2/(2S**2)``.  Both describe the same operator.
    """
    k, b = params.k, params.b

    def c1(r):
        return -geo.kappa_cos(k, r) / (2.0 * geo.kappa_sin(k, r))

    if form == "minimal":

        def c0(r):
            s = geo.kappa_sin(k, r)
            return (m - b * geo.versine(k, r)) ** 2 / (2.0 * s * s)

    elif form == "expanded":

        def c0(r):
            c, s, v = geo.kappa_cos(k, r), geo.kappa_sin(k, r), geo.versine(k, r)
            s2 = s * s
            return m * m / (2.0 * s2) - m * b * (1.0 - v * c / s2) + b * b * v * v / (2.0 * s2)

    else:
        raise ParameterError(f"unknown Hamiltonian form {form!r}")
    return RadialOperator(m, 0, lambda r: -0.5 + _zero(r), c1, c0, name=f"H[{form}]")


def casimir_hamiltonian(params: ModelParams, m: float) -> RadialOperator:
    """Half the extended Casimir built by composing the shift operators.

    ``(J+ J- + J- J+)/2 + (kappa/2) J12**2 + B J12`` on the sector ``m``.
    """
    up_m = shift_operator(params, "+", m)
    down_m = shift_operator(params, "-", m)
    up_from_below = shift_operator(params, "+", m - 1)
    down_from_above = shift_operator(params, "-", m + 1)
    quad = up_from_below.compose(down_m) + down_from_above.compose(up_m)
    return quad.scale(0.5) + (params.k * m * m / 2.0 - params.b * m)
