"""Quadrature with the invariant measure and finite-difference oracles.

Two kinds of tools live here:

* :func:`integrate_radial` computes ``int f g S(r) dr`` with Gauss-Legendre
  nodes, doubling the node count until two successive estimates agree, and
  choosing a truncation radius automatically on non-compact surfaces.
* :class:`SectorFunction` and :class:`Operator2D` apply differential
  expressions in ``(r, theta)`` to functions written as finite sums of
  angular sectors ``exp(i m theta) g_m(r)``.  The angular derivatives are
  exact; radial derivatives use central differences with one Richardson
  step (error ``O(h**4)``).  This is the independent oracle against which the
  radial operators of the library are checked.
"""

from __future__ import annotations

import functools
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Sequence

import numpy as np

from . import geometry as geo
from .errors import ChartDomainError, ConvergenceError

__all__ = [
    "FD_STEP",
    "fd_derivative",
    "QuadratureScheme",
    "default_scheme",
    "find_truncation_radius",
    "integrate_radial",
    "residual_norm",
    "TrigField",
    "SectorFunction",
    "Term",
    "Operator2D",
    "fd_apply",
    "commutator",
]

FD_STEP = 1e-4


# --- finite differences ----------------------------------------------------

def fd_derivative(func: Callable, r, order: int = 1, h: float = FD_STEP):
    """Central difference with one Richardson extrapolation step (error ``O(h**4)``).

    All offsets are evaluated in a single vectorized call, so nested
    applications cost one call per nesting level instead of a power of four.
    """
    r = np.asarray(r, dtype=float)
    if order == 1:
        offsets = np.array([h, -h, h / 2, -h / 2])
    elif order == 2:
        offsets = np.array([h, -h, h / 2, -h / 2, 0.0])
    else:
        raise ValueError("only first and second derivatives are supported")
    pts = r[None, ...] + offsets.reshape((-1,) + (1,) * r.ndim)
    vals = np.asarray(func(pts))
    if order == 1:
        coarse = (vals[0] - vals[1]) / (2 * h)
        fine = (vals[2] - vals[3]) / h
    else:
        coarse = (vals[0] - 2 * vals[4] + vals[1]) / (h * h)
        fine = (vals[2] - 2 * vals[4] + vals[3]) / (h * h / 4)
    out = np.asarray((4 * fine - coarse) / 3)
    return out if out.ndim else out[()]


# --- quadrature -------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _nodes(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@dataclass(frozen=True)
class QuadratureScheme:
    """Integration domain ``[0, r_max]`` and Gauss-Legendre node policy.

    ``domain`` is ``"compact"`` (the whole sphere, ``r_max = pi/sqrt(kappa)``)
    or ``"truncated"``.  When ``r_max`` is ``None`` on a non-compact surface the
    truncation radius is chosen from the integrand itself.
    """

    domain: str = "truncated"
    r_max: Optional[float] = None
    node_count: int = 256
    max_nodes: int = 4096
    rtol: float = 1e-10


def default_scheme(params) -> QuadratureScheme:
    if params.kappa > 0:
        return QuadratureScheme("compact", params.chart_radius)
    return QuadratureScheme("truncated", None)


def find_truncation_radius(integrand: Callable, start: float = 1.0, ratio: float = 1e-16,
                           limit: float = 1e4) -> float:
    """Smallest doubling of ``start`` beyond which ``|integrand|`` stays below ``ratio * peak``."""
    radius = start
    while radius <= limit:
        grid = np.linspace(0.0, radius, 4097)[1:]
        vals = np.abs(integrand(grid))
        peak = np.max(vals)
        if peak == 0:
            return radius
        tail = np.max(vals[int(0.9 * len(vals)):])
        if tail < ratio * peak:
            return radius
        radius *= 2
    raise ConvergenceError(f"integrand does not decay within r = {limit}")


def _gauss(integrand, a, b, n):
    x, w = _nodes(n)
    half = (b - a) / 2
    pts = a + half * (x + 1)
    vals = integrand(pts)
    return half * np.sum(w * vals), half * np.sum(w * np.abs(vals))


def _converged_gauss(integrand, a, b, scheme):
    n = scheme.node_count
    prev, _ = _gauss(integrand, a, b, n)
    while n < scheme.max_nodes:
        n *= 2
        cur, scale = _gauss(integrand, a, b, n)
        if abs(cur - prev) <= scheme.rtol * max(abs(cur), scale, 1e-300):
            return cur, scale
        prev = cur
    raise ConvergenceError(
        f"Gauss-Legendre estimates still differ by {abs(cur - prev):.3e} at {n} nodes"
    )


def integrate_radial(f: Callable, g: Callable, params, scheme: Optional[QuadratureScheme] = None):
    """``int_0^R f(r) g(r) S(r) dr`` with the invariant radial weight ``S``.

    The node count doubles until successive estimates agree to ``scheme.rtol``
    (relative to the integral or to ``int |f g| S``).  On non-compact surfaces
    with no explicit ``r_max`` the truncation radius is chosen where the
    integrand falls below ``1e-16`` of its peak, and the estimate is required
    to be unchanged when that radius is doubled.
    """
    k = params.k if hasattr(params, "k") else float(params)
    scheme = default_scheme(params) if scheme is None else scheme

    def integrand(r):
        return f(r) * g(r) * geo.measure_weight(k, r)

    if scheme.domain == "compact":
        r_max = geo.chart_radius(k) if scheme.r_max is None else scheme.r_max
        return _finish(_converged_gauss(integrand, 0.0, r_max, scheme)[0])
    if scheme.r_max is not None:
        return _finish(_converged_gauss(integrand, 0.0, scheme.r_max, scheme)[0])
    r_max = find_truncation_radius(integrand)
    first, scale = _converged_gauss(integrand, 0.0, r_max, scheme)
    second, _ = _converged_gauss(integrand, 0.0, 2 * r_max, scheme)
    if abs(second - first) > scheme.rtol * max(abs(second), scale):
        raise ConvergenceError("integral changes when the truncation radius is doubled")
    return _finish(second)


def _finish(value):
    value = complex(value)
    return value.real if value.imag == 0 else value


def residual_norm(op, f, eigenvalue, grid) -> float:
    """``max |op f - eigenvalue f| / max |f|`` over ``grid``.

    A function that vanishes on the whole grid has residual 0 by convention;
    a warning flags the degenerate input.
    """
    grid = np.asarray(grid, dtype=float)
    vals = np.asarray(f(grid))
    scale = np.max(np.abs(vals))
    if scale == 0:
        warnings.warn("residual of an identically zero function requested", RuntimeWarning,
                      stacklevel=2)
        return 0.0
    lhs = op.evaluate(f, grid)
    return float(np.max(np.abs(lhs - eigenvalue * vals)) / scale)


# --- two-dimensional oracle --------------------------------------------------

@dataclass(frozen=True)
class TrigField:
    """``sum_k a_k(r) exp(i k theta)``: a function on the chart given by its angular modes."""

    modes: Dict[int, Callable]

    def __call__(self, r, theta):
        out = 0j
        for k, a in self.modes.items():
            out = out + a(r) * np.exp(1j * k * theta)
        return out

    def d_theta(self, r, theta):
        out = 0j
        for k, a in self.modes.items():
            out = out + 1j * k * a(r) * np.exp(1j * k * theta)
        return out

    def d_r(self, r, theta):
        out = 0j
        for k, a in self.modes.items():
            out = out + fd_derivative(a, r) * np.exp(1j * k * theta)
        return out


@dataclass(frozen=True)
class SectorFunction:
    """``f(r, theta) = sum_m exp(i m theta) g_m(r)`` with callables ``g_m``."""

    sectors: Dict[float, Callable]

    def __call__(self, r, theta):
        out = 0j
        for m, g in self.sectors.items():
            out = out + g(r) * np.exp(1j * m * theta)
        return out

    def __sub__(self, other: "SectorFunction") -> "SectorFunction":
        return self + other.scale(-1)

    def __add__(self, other: "SectorFunction") -> "SectorFunction":
        out = dict(self.sectors)
        for m, g in other.sectors.items():
            if m in out:
                prev = out[m]
                out[m] = (lambda r, a=prev, b=g: a(r) + b(r))
            else:
                out[m] = g
        return SectorFunction(out)

    def scale(self, factor) -> "SectorFunction":
        return SectorFunction({m: (lambda r, g=g: factor * g(r)) for m, g in self.sectors.items()})


@dataclass(frozen=True)
class Term:
    """``coeff(r) exp(i shift theta) d_r^r_order d_theta^theta_order``."""

    shift: int
    coeff: Callable
    r_order: int = 0
    theta_order: int = 0


@dataclass(frozen=True)
class Operator2D:
    """A linear differential expression in ``(r, theta)`` whose coefficients are trigonometric polynomials."""

    terms: Sequence[Term]
    name: str = ""
    min_radius: float = field(default=0.0, compare=False)

    def apply(self, f: SectorFunction, h: float = FD_STEP) -> SectorFunction:
        out: Dict[float, Callable] = {}
        for t in self.terms:
            for m, g in f.sectors.items():
                ang = (1j * m) ** t.theta_order

                def piece(r, t=t, g=g, ang=ang):
                    if t.r_order == 0:
                        base = g(r)
                    else:
                        base = fd_derivative(g, r, order=t.r_order, h=h)
                    return t.coeff(r) * ang * base

                key = m + t.shift
                if key in out:
                    prev = out[key]
                    out[key] = (lambda r, a=prev, b=piece: a(r) + b(r))
                else:
                    out[key] = piece
        return SectorFunction(out)

    def __add__(self, other: "Operator2D") -> "Operator2D":
        return Operator2D(tuple(self.terms) + tuple(other.terms), f"{self.name}+{other.name}")

    def scale(self, factor) -> "Operator2D":
        return Operator2D(
            tuple(Term(t.shift, (lambda r, c=t.coeff: factor * c(r)), t.r_order, t.theta_order)
                  for t in self.terms),
            f"{factor}*{self.name}",
        )


def fd_apply(op: Operator2D, f: SectorFunction, point, kappa: float = 0.0,
             h: float = FD_STEP, depth: int = 1):
    """Evaluate ``(op f)(r, theta)`` with the finite-difference oracle.

    ``depth`` is the number of nested radial differentiations the caller will
    perform; the point must stay ``10 h`` per level away from the chart edges.
    """
    r, theta = point
    margin = 10 * h * depth
    if r < margin or (kappa > 0 and r > geo.chart_radius(kappa) - margin):
        raise ChartDomainError(f"r = {r} is closer than {margin} to the chart boundary")
    return op.apply(f, h)(r, theta)


def commutator(a: Operator2D, b: Operator2D, f: SectorFunction) -> SectorFunction:
    """``[a, b] f = a(b f) - b(a f)``."""
    return a.apply(b.apply(f)) - b.apply(a.apply(f))
