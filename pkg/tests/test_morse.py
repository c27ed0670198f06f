import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.integrate import quad

from kappa_landau import morse as mor
from kappa_landau.errors import DomainError, ParameterError
from kappa_landau.representation import ModelParams
from kappa_landau.spectrum import admissible_levels

HYP = ModelParams(-1, 2)


def test_requires_hyperbolic_surface():
    for p in (ModelParams(0, 2), ModelParams(1, 2)):
        with pytest.raises(ParameterError):
            mor.continuum_threshold(p)


def test_threshold_values():
    assert mor.continuum_threshold(HYP) == Fraction(17, 4)
    assert mor.continuum_threshold(HYP, "landau") == Fraction(17, 8)
    assert mor.continuum_threshold(ModelParams(-1, 0)) == Fraction(1, 4)
    # beta**2/|kappa| - kappa/4 = 1 + 1
    assert mor.continuum_threshold(ModelParams(-4, 2)) == 2
    with pytest.raises(ParameterError):
        mor.continuum_threshold(HYP, "joules")


def test_ground_level_parameters():
    lv = mor.morse_discrete_spectrum(HYP)[0]
    assert lv.E_prime == Fraction(-9, 4) and lv.s == Fraction(3, 2)
    assert lv.E == 2 * lv.energy


def test_spectrum_matches_landau_levels():
    for kappa, beta in [(-1, 2), (-1, 3), (Fraction(-1, 2), 2), (-2, 3)]:
        p = ModelParams(kappa, beta)
        assert [lv.energy for lv in mor.morse_discrete_spectrum(p)] == \
            [ln.energy for ln in admissible_levels(p)]


def test_levels_below_threshold():
    p = ModelParams(-1, 3)
    thr = mor.continuum_threshold(p)
    assert all(lv.E < thr for lv in mor.morse_discrete_spectrum(p))


def test_weak_field_has_no_bound_state():
    p = ModelParams(-1, Fraction(2, 5), strict=False)
    assert mor.morse_discrete_spectrum(p) == []
    assert mor.continuum_threshold(p) == Fraction(4, 25) + Fraction(1, 4)


def test_reduction_round_trip():
    lv = mor.morse_discrete_spectrum(HYP)[1]
    red = mor.morse_reduction(HYP, lv.E)
    assert red.E_prime == lv.E_prime
    assert red.s == pytest.approx(float(lv.s))
    assert mor.morse_level_index(HYP, lv.s) == 1
    assert mor.morse_reduction(HYP, 5.0).s is None


def test_potential_at_origin():
    assert mor.reduced_ode_coefficients(HYP, 1.0).potential(0.0) == pytest.approx(1.0)


def test_potential_zero_and_shift():
    ode = mor.reduced_ode_coefficients(HYP, 0.5)
    a0 = ode.potential_zero()
    assert ode.potential(a0) == pytest.approx(0.0, abs=1e-14)
    assert mor.morse_shift(HYP, 0.5) == pytest.approx(a0)
    with pytest.raises(DomainError):
        mor.morse_shift(HYP, -3.0)


def test_morse_potential_minimum():
    x = np.linspace(-1, 3, 2001)
    v = mor.morse_potential(HYP, x)
    assert x[np.argmin(v)] == pytest.approx(0.0, abs=1e-2)
    assert np.min(v) == pytest.approx(-4.0, rel=1e-6)


@pytest.mark.parametrize("lam", [0.0, 0.7, 2.5])
def test_separated_eigenfunctions_solve_the_equation(lam):
    p = ModelParams(-1, 3)
    ode = mor.reduced_ode_coefficients(p, lam)
    a = np.linspace(-5, 15, 801)
    for lv in mor.morse_discrete_spectrum(p):
        psi, d1, d2 = mor.separated_eigenfunction(p, lv.l, lam)
        analytic = ode.residual(psi, float(lv.E), a, d1, d2)
        numeric = ode.residual(psi, float(lv.E), a)
        assert np.max(np.abs(analytic)) < 1e-9
        assert np.max(np.abs(numeric)) < 1e-8


def test_morse_eigenfunctions_are_orthonormal():
    p = ModelParams(-1, 3)
    chis = [mor.morse_eigenfunction(p, l)[0] for l in range(3)]
    for i in range(3):
        for j in range(3):
            val, _ = quad(lambda x: chis[i](x) * chis[j](x), -10, 40, limit=400)
            assert val == pytest.approx(float(i == j), abs=1e-8)


def test_eigenfunction_level_out_of_range():
    with pytest.raises(DomainError):
        mor.morse_eigenfunction(HYP, 2)


def test_finite_difference_eigenvalues():
    p = ModelParams(-1, 3)
    exact = [float(lv.E) for lv in mor.morse_discrete_spectrum(p)]
    approx = mor.reduced_ode_eigenvalues(p, 0.0, count=3)
    assert np.allclose(approx, exact, rtol=1e-4)


def test_confluent_parameters():
    lv = mor.morse_discrete_spectrum(HYP)[1]
    assert mor.confluent_parameters(HYP, lv) == (-1, 2.0)


def test_harmonic_limit():
    """Corrections are of order ``k a`` with ``k = sqrt(-kappa) = 1e-4``."""
    p = ModelParams(Fraction(-1, 10**8), 2)
    ode = mor.reduced_ode_coefficients(p, 1.0)
    a = np.linspace(-1, 2, 7)
    assert np.allclose(ode.potential(a), (2 * a - 1) ** 2, rtol=1e-3, atol=1e-3)


def test_curl_of_horocyclic_potential():
    a, b, h = 0.3, -0.4, 1e-5
    va = lambda a, b: mor.horocyclic_potential(HYP, a, b)[0]
    vb = lambda a, b: mor.horocyclic_potential(HYP, a, b)[1]
    curl = (vb(a + h, b) - vb(a - h, b)) / (2 * h) - (va(a, b + h) - va(a, b - h)) / (2 * h)
    assert curl == pytest.approx(2 * math.exp(a), rel=1e-8)


def test_separation_phase_derivative():
    a, h = 0.4, 1e-5
    for b in (-1.0, 0.0, 0.8):
        deriv = (mor.separation_phase(HYP, a, b + h) - mor.separation_phase(HYP, a, b - h)) / (2 * h)
        assert deriv == pytest.approx(mor.separation_integrand(HYP, a, b), abs=1e-8)
    assert mor.separation_phase(HYP, a, 0.0) == 0.0


def test_landau_gauge_differs_by_gradient():
    """Both potentials have the same curl, so ``V - V_landau`` is closed."""
    a, b, h = -0.2, 0.5, 1e-5

    def diff(a, b):
        va, vb = mor.horocyclic_potential(HYP, a, b)
        la, lb = mor.landau_gauge_potential(HYP, a, b)
        return va - la, vb - lb

    curl = ((diff(a + h, b)[1] - diff(a - h, b)[1]) - (diff(a, b + h)[0] - diff(a, b - h)[0])) / (2 * h)
    assert curl == pytest.approx(0.0, abs=1e-8)
