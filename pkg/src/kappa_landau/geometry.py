"""Curvature-dependent trigonometry and the constant-curvature surface.

The surface is the set of points ``(x0, x1, x2)`` with
``x0**2 + kappa*(x1**2 + x2**2) = 1``.  For ``kappa > 0`` it is a sphere of
radius ``1/sqrt(kappa)``, for ``kappa = 0`` the plane ``x0 = 1`` and for
``kappa < 0`` the upper sheet of a two-sheeted hyperboloid.

The basic functions are::

    C(r) = cos(sqrt(kappa) r)          S(r) = sin(sqrt(kappa) r)/sqrt(kappa)
    vers(r) = (1 - C(r))/kappa

with the hyperbolic forms substituted when ``kappa < 0``.  Close to the flat
limit (``|kappa| r**2`` below :data:`SERIES_THRESHOLD`) a truncated Taylor
series in ``x = kappa r**2`` is used, so that ``kappa = 0`` is handled
without any special casing by callers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .errors import ChartDomainError, ParameterError, TangentPoleError

__all__ = [
    "SERIES_THRESHOLD",
    "KappaTrig",
    "SurfacePoint",
    "curvature_class",
    "kappa_trig",
    "kappa_cos",
    "kappa_sin",
    "versine",
    "half_log_cos_over_kappa",
    "measure_weight",
    "chart_radius",
    "embed_polar",
    "embed_horocyclic",
    "orbit_point",
    "generator_matrices",
]

#: Below this value of ``|kappa| r**2`` the series branch is used.
SERIES_THRESHOLD = 1e-4

_TANGENT_POLE_TOL = 1e-14


def curvature_class(kappa: float) -> str:
    """Return ``"positive"``, ``"zero"`` or ``"negative"`` according to the sign of kappa."""
    if kappa > 0:
        return "positive"
    if kappa < 0:
        return "negative"
    return "zero"


def _series_parts(kappa, r):
    x = kappa * r * r
    c = 1.0 - x / 2.0 + x * x / 24.0 - x**3 / 720.0
    s = r * (1.0 - x / 6.0 + x * x / 120.0 - x**3 / 5040.0)
    v = 0.5 * r * r * (1.0 - x / 12.0 + x * x / 360.0 - x**3 / 20160.0)
    return c, s, v


def _closed_parts(kappa, r):
    if kappa > 0:
        q = math.sqrt(kappa)
        c = np.cos(q * r)
        s = np.sin(q * r) / q
        sh = np.sin(q * r / 2.0) / q
    elif kappa < 0:
        q = math.sqrt(-kappa)
        c = np.cosh(q * r)
        s = np.sinh(q * r) / q
        sh = np.sinh(q * r / 2.0) / q
    else:
        return _series_parts(0.0, r)
    # (1 - C)/kappa written as 2 S(r/2)^2 has no cancellation.
    return c, s, 2.0 * sh * sh


def _parts(kappa, r):
    kappa = float(kappa)
    r_arr = np.asarray(r, dtype=float)
    small = np.abs(kappa) * r_arr * r_arr < SERIES_THRESHOLD
    if np.all(small):
        out = _series_parts(kappa, r_arr)
    elif not np.any(small):
        out = _closed_parts(kappa, r_arr)
    else:
        ser = _series_parts(kappa, r_arr)
        clo = _closed_parts(kappa, r_arr)
        out = tuple(np.where(small, a, b) for a, b in zip(ser, clo))
    if np.ndim(r) == 0:
        return tuple(float(v) for v in out)
    return out


@dataclass(frozen=True)
class KappaTrig:
    """Values of ``C`` and ``S`` at a radius; ``T = S/C`` is computed on access.

    Unpacking ``C, S, T = kappa_trig(kappa, r)`` works, and raises
    :class:`TangentPoleError` only when ``C`` vanishes.
    """

    C: object
    S: object

    @property
    def T(self):
        c = np.asarray(self.C, dtype=float)
        if np.any(np.abs(c) < _TANGENT_POLE_TOL):
            raise TangentPoleError("tangent requested where C = 0")
        t = np.asarray(self.S, dtype=float) / c
        return float(t) if t.ndim == 0 else t

    def __iter__(self):
        yield self.C
        yield self.S
        yield self.T


def kappa_trig(kappa: float, r) -> KappaTrig:
    """Return the curvature-dependent cosine and sine at geodesic radius ``r``.

    Works for scalars and numpy arrays; the result always holds real values.
    """
    c, s, _ = _parts(kappa, r)
    return KappaTrig(c, s)


def kappa_cos(kappa: float, r):
    return _parts(kappa, r)[0]


def kappa_sin(kappa: float, r):
    return _parts(kappa, r)[1]


def versine(kappa: float, r):
    """``(1 - C(r))/kappa``, continuous at ``kappa = 0`` where it equals ``r**2/2``."""
    return _parts(kappa, r)[2]


def half_log_cos_over_kappa(kappa: float, r):
    """``log(C(r/2))/kappa``, with its flat limit ``-r**2/8`` at ``kappa = 0``.

    This is the logarithm of the envelope ``C(r/2)**(1/kappa)`` that turns into
    a Gaussian in the planar limit; evaluated through ``log1p`` to keep full
    relative precision for tiny curvature.
    """
    kappa = float(kappa)
    v = versine(kappa, np.asarray(r, dtype=float) / 2.0)
    if kappa == 0.0:
        out = -np.asarray(v)
    else:
        out = np.log1p(-kappa * np.asarray(v)) / kappa
    return float(out) if np.ndim(out) == 0 else out


def measure_weight(kappa: float, r):
    """Radial density of the invariant area element ``S(r) dr dtheta``."""
    return kappa_sin(kappa, r)


def chart_radius(kappa: float) -> float:
    """Largest geodesic radius of the polar chart (``inf`` unless ``kappa > 0``)."""
    return math.pi / math.sqrt(kappa) if kappa > 0 else math.inf


@dataclass(frozen=True)
class SurfacePoint:
    """A point of the ambient space, normally lying on the surface."""

    x0: float
    x1: float
    x2: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x0, self.x1, self.x2])

    def constraint(self, kappa: float) -> float:
        """``x0**2 + kappa*(x1**2 + x2**2)``; equal to 1 on the surface."""
        return self.x0**2 + kappa * (self.x1**2 + self.x2**2)


def _check_chart(kappa: float, r: float) -> None:
    if r < 0 or not math.isfinite(r):
        raise ChartDomainError(f"radius must be finite and non-negative, got {r}")
    if kappa > 0 and r > chart_radius(kappa) * (1 + 1e-15):
        raise ChartDomainError(
            f"r = {r} exceeds the chart radius pi/sqrt(kappa) = {chart_radius(kappa)}"
        )


def embed_polar(kappa: float, r: float, theta: float) -> SurfacePoint:
    """Map geodesic polar coordinates to the ambient point ``(C, S cos t, S sin t)``."""
    r = float(r)
    _check_chart(kappa, r)
    c, s, _ = _parts(kappa, r)
    return SurfacePoint(c, s * math.cos(theta), s * math.sin(theta))


def embed_horocyclic(kappa: float, a: float, b: float) -> SurfacePoint:
    """Map horocyclic coordinates ``(a, b)`` to the hyperboloid (``kappa < 0`` only).

    With ``k = sqrt(-kappa)``::

        x0 = cosh(k a) - kappa b**2 exp(k a)/2
        x1 = sinh(k a)/k + kappa b**2 exp(k a)/(2k)
        x2 = b exp(k a)

    The induced metric is ``da**2 + exp(2 k a) db**2``; at ``kappa -> 0`` the
    map tends to the Cartesian chart ``(1, a, b)``.
    """
    if not kappa < 0:
        raise ParameterError("horocyclic coordinates require kappa < 0")
    k = math.sqrt(-kappa)
    e = math.exp(k * a)
    ka = k * a
    # sinh(ka)/k with a series for tiny arguments keeps the flat limit exact.
    sinh_over_k = a * (1 + ka * ka / 6 + ka**4 / 120) if abs(ka) < 1e-4 else math.sinh(ka) / k
    x0 = math.cosh(ka) - kappa * b * b * e / 2.0
    x1 = sinh_over_k + kappa * b * b * e / (2.0 * k)
    return SurfacePoint(x0, x1, b * e)


def generator_matrices(kappa: float):
    """Return the 3x3 matrices ``-i J01``, ``-i J02`` and ``-i J12`` (all real).

    They act on column vectors ``(x0, x1, x2)`` and satisfy the commutation
    relations of the curvature-dependent rotation algebra.
    """
    m01 = np.zeros((3, 3))
    m01[0, 1] = -kappa
    m01[1, 0] = 1.0
    m02 = np.zeros((3, 3))
    m02[0, 2] = -kappa
    m02[2, 0] = 1.0
    m12 = np.zeros((3, 3))
    m12[1, 2] = -1.0
    m12[2, 1] = 1.0
    return m01, m02, m12


def orbit_point(kappa: float, r: float, theta: float) -> SurfacePoint:
    """Move the origin ``(1, 0, 0)`` by ``exp(-i theta J12) exp(-i r J01)``.

    Independent of :func:`embed_polar`; the two must agree.
    """
    _check_chart(kappa, float(r))
    m01, _, m12 = generator_matrices(kappa)
    x = expm(theta * m12) @ expm(r * m01) @ np.array([1.0, 0.0, 0.0])
    return SurfacePoint(float(x[0]), float(x[1]), float(x[2]))
