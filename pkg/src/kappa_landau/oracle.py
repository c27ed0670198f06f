"""Two-dimensional forms of the generators, used only as an independent check.

Operators are written on the polar chart ``(r, theta)`` as sums of terms
``coeff(r) exp(i s theta) d_r^a d_theta^b`` (see :class:`numerics.Operator2D`),
with ``cos theta`` and ``sin theta`` expanded into ``exp(+-i theta)``.  They
act on :class:`numerics.SectorFunction` objects with exact angular
derivatives and finite-difference radial derivatives, so nothing here reuses
the radial reductions of :mod:`representation`.

Fields (``C = cos_kappa r``, ``S = sin_kappa r``)::

    J01 = -i cos(theta) d_r + i (C/S) sin(theta) d_theta
    J02 = -i sin(theta) d_r - i (C/S) cos(theta) d_theta
    J12 = -i d_theta

The extended generators add ``W01 = -Phi sin(theta)``, ``W02 = Phi cos(theta)``
with ``Phi = beta vers/S`` (or ``(lambda - (b/kappa) C)/S`` for the
two-parameter family), and ``B = -beta``.  The horizontal lifts ``X*``
replace each ``-i d_mu`` by ``D_mu = -i d_mu - A_mu`` with ``A_theta =
beta vers``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, Tuple

import numpy as np

from . import geometry as geo
from .numerics import Operator2D, SectorFunction, Term, TrigField

__all__ = [
    "GENERATOR_NAMES",
    "structure_constants",
    "field_operators",
    "extended_operators",
    "general_operators",
    "lifted_operators",
    "casimir_extended",
    "casimir_lifted",
    "identity_operator",
    "random_test_function",
    "vector_field_components",
    "gauge_pde_residual",
    "extended_potential",
    "general_potential",
]

GENERATOR_NAMES = ("J01", "J02", "J12")


def structure_constants(kappa: float) -> Dict[Tuple[str, str], Dict[str, complex]]:
    """``[X_i, X_j] = sum_k c[(i, j)][k] X_k`` for the unextended algebra."""
    base = {
        ("J01", "J02"): {"J12": 1j * kappa},
        ("J12", "J01"): {"J02": 1j},
        ("J12", "J02"): {"J01": -1j},
    }
    out = {}
    for (a, b), rhs in base.items():
        out[(a, b)] = rhs
        out[(b, a)] = {k: -v for k, v in rhs.items()}
    for a in GENERATOR_NAMES:
        out[(a, a)] = {}
    return out


def _cot(kappa):
    return lambda r: geo.kappa_cos(kappa, r) / geo.kappa_sin(kappa, r)


def _const(c):
    return lambda r: c + 0 * np.asarray(r, dtype=float)


def field_operators(kappa: float) -> Dict[str, Operator2D]:
    """The vector fields of the surface as operators (no gauge terms)."""
    cot = _cot(kappa)
    j01 = Operator2D((
        Term(1, _const(-0.5j), 1, 0), Term(-1, _const(-0.5j), 1, 0),
        Term(1, lambda r: 0.5 * cot(r), 0, 1), Term(-1, lambda r: -0.5 * cot(r), 0, 1),
    ), "J01")
    j02 = Operator2D((
        Term(1, _const(-0.5), 1, 0), Term(-1, _const(0.5), 1, 0),
        Term(1, lambda r: -0.5j * cot(r), 0, 1), Term(-1, lambda r: -0.5j * cot(r), 0, 1),
    ), "J02")
    j12 = Operator2D((Term(0, _const(-1j), 0, 1),), "J12")
    return {"J01": j01, "J02": j02, "J12": j12}


def _with_phi(kappa: float, phi: Callable, central: float) -> Dict[str, Operator2D]:
    ops = field_operators(kappa)
    # W01 = -phi sin(theta) = -phi (e^{i th} - e^{-i th})/(2i); W02 = phi cos(theta)
    w01 = Operator2D((Term(1, lambda r: 0.5j * phi(r)), Term(-1, lambda r: -0.5j * phi(r))), "W01")
    w02 = Operator2D((Term(1, lambda r: 0.5 * phi(r)), Term(-1, lambda r: 0.5 * phi(r))), "W02")
    return {
        "J01": ops["J01"] + w01,
        "J02": ops["J02"] + w02,
        "J12": ops["J12"],
        "B": Operator2D((Term(0, _const(complex(central))),), "B"),
    }


def extended_operators(kappa: float, beta: float) -> Dict[str, Operator2D]:
    """Extended generators with ``Phi = beta vers/S`` and ``B = -beta``."""
    def phi(r):
        return beta * geo.versine(kappa, r) / geo.kappa_sin(kappa, r)

    return _with_phi(kappa, phi, -beta)


def general_operators(kappa: float, lambda_ind: float, b_ind: float) -> Dict[str, Operator2D]:
    """Two-parameter family with ``Phi = (lambda - (b/kappa) C)/S`` and ``B = -b``."""
    if kappa == 0:
        raise ValueError("the two-parameter family needs kappa != 0")

    def phi(r):
        return (lambda_ind - b_ind / kappa * geo.kappa_cos(kappa, r)) / geo.kappa_sin(kappa, r)

    return _with_phi(kappa, phi, -b_ind)


def lifted_operators(kappa: float, beta: float) -> Dict[str, Operator2D]:
    """Horizontal lifts: ``J01* = J01 + (C/S) sin(theta) A_theta``, ``J02* = J02 - (C/S) cos(theta) A_theta``,
    ``J12* = J12 - A_theta``."""
    ops = field_operators(kappa)
    cot = _cot(kappa)

    def a_th(r):
        return beta * geo.versine(kappa, r)

    def c(r):
        return cot(r) * a_th(r)

    l01 = Operator2D((Term(1, lambda r: -0.5j * c(r)), Term(-1, lambda r: 0.5j * c(r))), "L01")
    l02 = Operator2D((Term(1, lambda r: -0.5 * c(r)), Term(-1, lambda r: -0.5 * c(r))), "L02")
    l12 = Operator2D((Term(0, lambda r: -a_th(r)),), "L12")
    return {"J01": ops["J01"] + l01, "J02": ops["J02"] + l02, "J12": ops["J12"] + l12}


def identity_operator() -> Operator2D:
    return Operator2D((Term(0, _const(1.0)),), "1")


def _square(op: Operator2D, f: SectorFunction) -> SectorFunction:
    return op.apply(op.apply(f))


def casimir_extended(kappa: float, beta: float, f: SectorFunction) -> SectorFunction:
    """``J01**2 + J02**2 + kappa J12**2 + 2 B J12`` applied to ``f``."""
    ops = extended_operators(kappa, beta)
    out = _square(ops["J01"], f) + _square(ops["J02"], f)
    out = out + _square(ops["J12"], f).scale(kappa)
    return out + ops["J12"].apply(f).scale(-2 * beta)


def casimir_lifted(kappa: float, beta: float, f: SectorFunction) -> SectorFunction:
    """``C(X*) = X01*^2 + X02*^2 + kappa X12*^2``."""
    ops = lifted_operators(kappa, beta)
    out = _square(ops["J01"], f) + _square(ops["J02"], f)
    return out + _square(ops["J12"], f).scale(kappa)


def _bump(x):
    """Smooth bump supported on ``|x| < 1``."""
    x = np.asarray(x, dtype=float)
    inside = np.abs(x) < 1
    safe = np.where(inside, x, 0.0)
    return np.where(inside, np.exp(1 - 1 / (1 - safe * safe)), 0.0)


def random_test_function(rng: np.random.Generator, radius: float,
                         sectors=(-2, -1, 0, 1, 2)) -> SectorFunction:
    """Random smooth, compactly supported function regular at the origin.

    Sector ``m`` carries ``r**|m| p_m(r) bump(r/radius)`` with a random
    complex quadratic ``p_m``.
    """
    parts = {}
    for m in sectors:
        coef = rng.normal(size=3) + 1j * rng.normal(size=3)
        parts[m] = (lambda r, coef=coef, m=m:
                    np.asarray(r, dtype=float) ** abs(m)
                    * (coef[0] + coef[1] * np.asarray(r) + coef[2] * np.asarray(r) ** 2)
                    * _bump(np.asarray(r) / radius))
    return SectorFunction(parts)


# --- gauge invariance of the potential ------------------------------------------------

@dataclass(frozen=True)
class _FieldData:
    xr: TrigField
    xt: TrigField
    w: TrigField


def vector_field_components(kappa: float, phi: Callable) -> Dict[str, _FieldData]:
    """Components ``X^r, X^theta`` (complex, as printed with the factor ``-i``) and ``W``."""
    cot = _cot(kappa)
    zero = _const(0.0)
    return {
        "J01": _FieldData(
            TrigField({1: _const(-0.5j), -1: _const(-0.5j)}),
            TrigField({1: lambda r: 0.5 * cot(r), -1: lambda r: -0.5 * cot(r)}),
            TrigField({1: lambda r: 0.5j * phi(r), -1: lambda r: -0.5j * phi(r)}),
        ),
        "J02": _FieldData(
            TrigField({1: _const(-0.5), -1: _const(0.5)}),
            TrigField({1: lambda r: -0.5j * cot(r), -1: lambda r: -0.5j * cot(r)}),
            TrigField({1: lambda r: 0.5 * phi(r), -1: lambda r: 0.5 * phi(r)}),
        ),
        "J12": _FieldData(TrigField({0: zero}), TrigField({0: _const(-1j)}), TrigField({0: zero})),
    }


def gauge_pde_residual(kappa: float, a_theta: Callable, phi: Callable, point) -> float:
    """Largest component of ``X^mu d_mu A_nu + A_mu d_nu X^mu - i d_nu W`` over the fields.

    ``A_r = 0`` and ``A_theta(r)`` is radial, so ``d_theta A`` vanishes and
    only ``A_theta`` enters the second term.
    """
    from .numerics import fd_derivative

    r, th = point
    a_val = a_theta(r)
    a_r = fd_derivative(a_theta, r)
    worst = 0.0
    for data in vector_field_components(kappa, phi).values():
        xr = data.xr(r, th)
        # nu = r:  X^r d_r A_r + X^th d_th A_r + A_th d_r X^th - i d_r W
        res_r = a_val * data.xt.d_r(r, th) - 1j * data.w.d_r(r, th)
        # nu = theta: X^r d_r A_th + A_th d_th X^th - i d_th W
        res_t = xr * a_r + a_val * data.xt.d_theta(r, th) - 1j * data.w.d_theta(r, th)
        worst = max(worst, abs(res_r), abs(res_t))
    return float(worst)


def extended_potential(kappa: float, beta: float) -> Tuple[Callable, Callable]:
    """``(A_theta, Phi)`` for the one-parameter generators: ``beta vers`` and ``beta vers/S``."""
    return (lambda r: beta * geo.versine(kappa, r),
            lambda r: beta * geo.versine(kappa, r) / geo.kappa_sin(kappa, r))


def general_potential(kappa: float, lambda_ind: float, b_ind: float) -> Tuple[Callable, Callable]:
    """``(A_theta, Phi)`` for the two-parameter generators.

    ``A_theta = b/kappa - lambda C`` (note the roles of the labels: ``lambda``
    multiplies the cosine here while ``b/kappa`` does in ``Phi``).  With
    ``lambda = b/kappa`` it reduces to ``b vers``.
    """
    if kappa == 0:
        raise ValueError("the two-parameter family needs kappa != 0")
    return (lambda r: b_ind / kappa - lambda_ind * geo.kappa_cos(kappa, r),
            lambda r: (lambda_ind - b_ind / kappa * geo.kappa_cos(kappa, r))
            / geo.kappa_sin(kappa, r))
