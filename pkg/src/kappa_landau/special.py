"""Terminating hypergeometric series and classical orthogonal polynomials.

The polynomial evaluators use their three-term recurrences directly.  They
stay valid for negative integer parameters (``P_n^(alpha, beta)`` with
``alpha = -k``), a regime in which the library routines of scipy lose the
polynomial solution.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import rgamma

from .errors import ParameterError, PoleError

__all__ = [
    "hypergeometric_coefficients",
    "hypergeometric_terminating",
    "confluent_coefficients",
    "confluent_terminating",
    "jacobi",
    "laguerre",
    "pochhammer",
]


def pochhammer(a: float, n: int) -> float:
    """Rising factorial ``(a)_n`` as a plain product."""
    out = 1.0
    for j in range(n):
        out *= a + j
    return out


def _check_degree(l) -> int:
    if int(l) != l or l < 0:
        raise ParameterError(f"termination degree must be a non-negative integer, got {l}")
    return int(l)


def hypergeometric_coefficients(l: int, b: float, c: float, regularized: bool) -> np.ndarray:
    """Coefficients ``t_n`` with ``2F1(-l, b; c; x) = sum_n t_n x**n``.

    In regularized mode ``t_n = (-l)_n (b)_n / (n! Gamma(c+n))``, which vanishes
    whenever ``c + n`` is a non-positive integer.
    """
    l = _check_degree(l)
    coeffs = np.zeros(l + 1)
    for n in range(l + 1):
        num = pochhammer(-l, n) * pochhammer(b, n) / math.factorial(n)
        if regularized:
            coeffs[n] = num * float(rgamma(c + n))
        else:
            den = pochhammer(c, n)
            if den == 0:
                raise PoleError(f"(c)_n vanishes for c={c}, n={n}; use the regularized form")
            coeffs[n] = num / den
    return coeffs


def hypergeometric_terminating(l: int, b: float, c: float, x, regularized: bool = False):
    """``2F1(-l, b; c; x)``, or ``2F1/Gamma(c)`` when ``regularized``."""
    coeffs = hypergeometric_coefficients(l, b, c, regularized)
    return np.polynomial.polynomial.polyval(x, coeffs)


def confluent_coefficients(l: int, c: float, regularized: bool) -> np.ndarray:
    """Coefficients of ``1F1(-l; c; x)`` (optionally divided by ``Gamma(c)``)."""
    l = _check_degree(l)
    coeffs = np.zeros(l + 1)
    for n in range(l + 1):
        num = pochhammer(-l, n) / math.factorial(n)
        if regularized:
            coeffs[n] = num * float(rgamma(c + n))
        else:
            den = pochhammer(c, n)
            if den == 0:
                raise PoleError(f"(c)_n vanishes for c={c}, n={n}; use the regularized form")
            coeffs[n] = num / den
    return coeffs


def confluent_terminating(l: int, c: float, x, regularized: bool = False):
    """Kummer's ``M(-l, c, x)``, or ``M/Gamma(c)`` when ``regularized``."""
    return np.polynomial.polynomial.polyval(x, confluent_coefficients(l, c, regularized))


def jacobi(n: int, alpha: float, beta: float, z):
    """Jacobi polynomial ``P_n^(alpha, beta)(z)`` by the standard recurrence."""
    n = _check_degree(n)
    z = np.asarray(z, dtype=float)
    p_prev = np.ones_like(z)
    if n == 0:
        return p_prev
    p = (alpha + 1) + (alpha + beta + 2) * (z - 1) / 2
    ab = alpha + beta
    for k in range(2, n + 1):
        a1 = 2 * k * (k + ab) * (2 * k + ab - 2)
        if a1 == 0:
            raise PoleError(f"Jacobi recurrence degenerates at degree {k} for alpha+beta={ab}")
        a2 = (2 * k + ab - 1) * (alpha * alpha - beta * beta)
        a3 = (2 * k + ab - 2) * (2 * k + ab - 1) * (2 * k + ab)
        a4 = 2 * (k + alpha - 1) * (k + beta - 1) * (2 * k + ab)
        p, p_prev = ((a2 + a3 * z) * p - a4 * p_prev) / a1, p
    return p


def laguerre(n: int, alpha: float, x):
    """Generalized Laguerre polynomial ``L_n^alpha(x)`` by the standard recurrence."""
    n = _check_degree(n)
    x = np.asarray(x, dtype=float)
    l_prev = np.ones_like(x)
    if n == 0:
        return l_prev
    cur = 1 + alpha - x
    for k in range(1, n):
        cur, l_prev = ((2 * k + 1 + alpha - x) * cur - (k + alpha) * l_prev) / (k + 1), cur
    return cur
