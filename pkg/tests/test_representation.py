import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from kappa_landau.errors import ParameterError, QuantizationError
from kappa_landau.representation import (
    InductionLabels,
    ModelParams,
    RadialFunction,
    casimir_hamiltonian,
    field_strength,
    gauge_potential,
    general_generator,
    hamiltonian,
    local_generator,
    shift_operator,
    to_fraction,
)


def _gauss(m):
    """``r**|m| exp(-r**2)`` with exact derivatives."""
    a = abs(m)

    def v(r):
        return r**a * np.exp(-r * r)

    def d1(r):
        return (a * r ** (a - 1) - 2 * r ** (a + 1)) * np.exp(-r * r) if a else -2 * r * np.exp(-r * r)

    def d2(r):
        return np.gradient(d1(r), r) if False else _fd2(v, r)

    return RadialFunction(float(m), v, d1, d2)


def _fd2(f, r, h=1e-4):
    return (f(r + h) - 2 * f(r) + f(r - h)) / (h * h)


def test_to_fraction_reads_decimals_exactly():
    assert to_fraction(0.5) == Fraction(1, 2)
    assert to_fraction("2/3") == Fraction(2, 3)
    assert to_fraction(0.1) == Fraction(1, 10)


def test_quantization_enforced_unless_relaxed():
    with pytest.raises(QuantizationError):
        ModelParams(1, Fraction(3, 10))
    p = ModelParams(1, Fraction(3, 10), strict=False)
    assert p.flux_ratio == Fraction(3, 5)
    assert not p.is_quantized


def test_flat_params_have_no_flux_ratio():
    assert ModelParams(0, 0.3).flux_ratio is None


def test_gauge_potential_examples():
    assert gauge_potential(ModelParams(0, 3), 2) == (0.0, pytest.approx(6.0))
    assert gauge_potential(ModelParams(1, 2), math.pi) == (0.0, pytest.approx(4.0))


def test_field_strength_example():
    assert field_strength(ModelParams(0, 2), 3) == pytest.approx(6.0)


@pytest.mark.parametrize("kappa", [1, 0, -1])
def test_field_strength_is_derivative_of_potential(kappa):
    p = ModelParams(kappa, 2)
    r, h = np.linspace(0.2, 2.5, 9), 1e-5
    deriv = (gauge_potential(p, r + h)[1] - gauge_potential(p, r - h)[1]) / (2 * h)
    assert np.allclose(deriv, field_strength(p, r), rtol=1e-8)


@pytest.mark.parametrize("kappa", [1, 0, -1, Fraction(1, 2)])
@pytest.mark.parametrize("m", [-2, 0, 3])
def test_hamiltonian_forms_agree(kappa, m):
    p = ModelParams(kappa, 2)
    f = _gauss(m)
    r = np.linspace(0.1, 2.5, 25)
    a = hamiltonian(p, m).evaluate(f, r)
    b = hamiltonian(p, m, form="expanded").evaluate(f, r)
    c = casimir_hamiltonian(p, m).evaluate(f, r)
    scale = np.max(np.abs(a))
    assert np.max(np.abs(a - b)) / scale < 1e-12
    assert np.max(np.abs(a - c)) / scale < 1e-6


def test_unknown_hamiltonian_form():
    with pytest.raises(ParameterError):
        hamiltonian(ModelParams(1, 2), 0, form="weird")


def test_shift_operator_moves_sector():
    op = shift_operator(ModelParams(1, 2), "+", 3)
    assert op.m_out == 4
    assert shift_operator(ModelParams(1, 2), "-", 3).m_out == 2
    with pytest.raises(ParameterError):
        shift_operator(ModelParams(1, 2), "x", 0)


def test_generator_sectors():
    p = ModelParams(1, 2)
    j01 = local_generator(p, "J01", 1)
    outs = sorted(part.m_out for part in j01.parts)
    assert outs == [0, 2]
    b = local_generator(p, "B", 1).single
    f = _gauss(1)
    assert np.allclose(b.evaluate(f, np.array([0.5])), -2 * f.value(np.array([0.5])))
    with pytest.raises(ParameterError):
        local_generator(p, "J03", 0)


def test_general_generator_reduces_to_local():
    kappa, b = 1.0, 2.0
    labels = InductionLabels(b / kappa, b)
    p = ModelParams(1, 2)
    f = _gauss(1)
    r = np.linspace(0.2, 2.0, 7)
    for which in ("J01", "J02"):
        g = general_generator(labels, kappa, which, 1).apply(f)
        loc = local_generator(p, which, 1).apply(f)
        for m in loc:
            assert np.allclose(g[m].value(r), loc[m].value(r), atol=1e-13)


def test_general_generator_needs_curvature():
    with pytest.raises(ParameterError):
        general_generator(InductionLabels(1, 1), 0, "J01", 0)


@given(beta=st.sampled_from([Fraction(1, 2), 1, Fraction(3, 2), 2, 3]), m=st.integers(-3, 3),
       r=st.floats(0.05, 3.0))
def test_minimal_form_potential_is_nonnegative(beta, m, r):
    """The zeroth-order coefficient is a square divided by ``2 S**2``."""
    c0 = hamiltonian(ModelParams(-1, beta), m).coefficients(np.array([r]))
    assert np.all(np.real(c0[-1]) >= 0)
