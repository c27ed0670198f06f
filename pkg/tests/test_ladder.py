from fractions import Fraction

import numpy as np
import pytest

from kappa_landau import ladder as lad
from kappa_landau.eigenfunctions import radial_eigenfunction
from kappa_landau.errors import ParameterError, PoleError
from kappa_landau.representation import ModelParams, RadialFunction
from kappa_landau.spectrum import LOWEST, StateLabel, admissible_levels, m_range

PARAMS = [ModelParams(1, 2), ModelParams(0, 2), ModelParams(-1, 2)]


def _probe(m):
    a = abs(m)
    v = lambda r: np.asarray(r) ** a * np.exp(-np.asarray(r) ** 2) * (1 + 0.3 * np.asarray(r))
    h = 1e-4
    d1 = lambda r: (v(r + h) - v(r - h)) / (2 * h)
    d2 = lambda r: (v(r + h) - 2 * v(r) + v(r - h)) / (h * h)
    return RadialFunction(float(m), v, d1, d2)


def _grid(p):
    return np.linspace(0.2, 2.8 if p.kappa > 0 else 4.0, 30)


@pytest.mark.parametrize("p", PARAMS, ids=str)
@pytest.mark.parametrize("l,m", [(1, 0), (1, 2), (1, -1), (3, 1)])
def test_factorization_identity(p, l, m):
    """``A+ A- + delta`` and the level operator agree as operators."""
    if p.beta + p.kappa * l == 0:
        pytest.skip("beta + kappa l = 0: no factorization at this level")
    fac = lad.ladder_operator(p, l, m, "+").compose(lad.ladder_operator(p, l, m, "-"))
    delta = float(lad.factorization_coeffs(p, l, m).delta_l)
    f, r = _probe(m), _grid(p)
    lhs = fac.evaluate(f, r) + delta * f.value(r)
    rhs = lad.level_operator(p, l, m).evaluate(f, r)
    assert np.max(np.abs(lhs - rhs)) <= 1e-8 * np.max(np.abs(rhs))


@pytest.mark.parametrize("p", PARAMS, ids=str)
def test_lowering_connects_consecutive_levels(p):
    for l, m in [(1, 0), (1, 3)]:
        lo, hi = m_range(p, LOWEST, l - 1)
        if not lo <= m <= hi:
            continue
        up = radial_eigenfunction(p, StateLabel(LOWEST, l, m))
        down = radial_eigenfunction(p, StateLabel(LOWEST, l - 1, m))
        r = _grid(p)
        img = lad.ladder_operator(p, l, m, "-").evaluate(up, r)
        ratio = img / down.value(r)
        assert np.allclose(ratio, ratio[0], rtol=1e-8)


def test_plane_delta_branch():
    fc = lad.factorization_coeffs(ModelParams(0, 2), 2, 1)
    assert fc.delta_l == 4 * 4 + 4 * 2 * 1
    assert fc.mu_l is None and fc.nu_l is None


def test_exact_coefficients_are_rational():
    fc = lad.factorization_coeffs(ModelParams(Fraction(1, 2), 3), 1, 2)
    assert all(isinstance(x, Fraction) for x in (fc.mu_l, fc.nu_l, fc.delta_l, fc.g_const))


def test_curved_g_tends_to_planar():
    flat = lad.factorization_coeffs(ModelParams(0, 2), 2, 1)
    near = lad.factorization_coeffs(ModelParams(Fraction(1, 10**6), 2, strict=False), 2, 1)
    assert float(near.g_const) == pytest.approx(float(flat.g_const), rel=1e-5)
    assert float(near.delta_l) == pytest.approx(float(flat.delta_l), rel=1e-5)


def test_degenerate_factorization_raises():
    with pytest.raises(PoleError):
        lad.factorization_coeffs(ModelParams(-1, 2), 2, 0)


def test_bad_sign():
    with pytest.raises(ParameterError):
        lad.ladder_operator(ModelParams(1, 2), 1, 0, "?")
    with pytest.raises(ParameterError):
        lad.kernel_exponents(ModelParams(1, 2), 1, 0, "?")


@pytest.mark.parametrize("p", PARAMS, ids=str)
def test_vacuum_is_annihilated(p):
    for m in (0, 2):
        vac = lad.vacuum_state(p, 0, m)
        r = _grid(p)
        out = lad.ladder_operator(p, 0, m, "-").evaluate(vac, r)
        assert np.max(np.abs(out)) <= 1e-12 * np.max(np.abs(vac.value(r)))


@pytest.mark.parametrize("p", PARAMS, ids=str)
def test_table_agrees_with_kernel_exponents(p):
    for line in lad.annihilation_lines(p, "-"):
        for m in range(-6, 7):
            l = line.l_of_m(m)
            try:
                exps = lad.kernel_exponents(p, l, m, "-")
            except PoleError:
                continue
            assert line.normalizable_condition(m) == lad.kernel_is_normalizable(exps), (line.id, m)


def test_sphere_table_rows():
    lines = {ln.id: ln for ln in lad.annihilation_lines(ModelParams(1, 2), "-")}
    assert lines["i"].normalizable_condition(-2)
    assert lines["ii"].normalizable_condition(4) and not lines["ii"].normalizable_condition(5)
    assert not any(lines["iii"].normalizable_condition(m) for m in range(-5, 6))
    assert lines["iv"].normalizable_condition(5)


def test_hyperbolic_table_rows():
    lines = {ln.id: ln for ln in lad.annihilation_lines(ModelParams(-1, 2), "-")}
    # beta/kappa + 1/2 = -3/2 < m <= 0
    assert lines["i"].normalizable_condition(-1) and not lines["i"].normalizable_condition(-2)
    assert not lines["iv"].normalizable_condition(10)


def test_lines_need_positive_field():
    with pytest.raises(ParameterError):
        lad.annihilation_lines(ModelParams(1, -2))


def test_plane_has_two_raising_lines():
    assert {ln.id for ln in lad.annihilation_lines(ModelParams(0, 2), "+")} == {"iii'", "iv'"}


@pytest.mark.parametrize("p", PARAMS, ids=str)
def test_untwisted_lattice_is_the_spectrum(p):
    lattice = {(s.l, s.m) for s in lad.normalizable_lattice(p, 0.0, 2, (-6, 6))}
    expected = set()
    for ln in admissible_levels(p, l_max=2):
        for m in range(max(int(ln.m_min), -6), int(min(ln.m_max, 6)) + 1):
            expected.add((ln.l, m))
    assert lattice == expected


def test_twisted_lattice_uses_shifted_sectors():
    states = lad.normalizable_lattice(ModelParams(0, 2), 0.25, 1, (-3, 3))
    assert states and all(abs((s.m - 0.25) % 1) < 1e-12 for s in states)
    assert lad.in_lattice(ModelParams(0, 2), 0.25, 0, 1.25)
    assert not lad.in_lattice(ModelParams(0, 2), 0.25, 0, 1.0)


def test_moving_states_escape_in_the_plane():
    assert lad.escaping_images(ModelParams(0, 2), 0.0) == []
    assert lad.escaping_images(ModelParams(0, 2), 0.5)


@pytest.mark.parametrize("p,index", [(ModelParams(1, 2), 0), (ModelParams(0, 2), 1),
                                     (ModelParams(-1, 2), 1)], ids=str)
def test_flow_index(p, index):
    assert lad.spectral_flow_index(p) == index


def test_boundary_class_validation():
    assert lad.BoundaryClass.from_rho(1.25).alpha == 0.25
    with pytest.raises(ParameterError):
        lad.BoundaryClass(1.5)
    with pytest.raises(ParameterError):
        lad.BoundaryClass(0.2, 0.3)


@pytest.mark.parametrize("p", [ModelParams(1, 2), ModelParams(Fraction(1, 2), 2),
                               ModelParams(-1, 2), ModelParams(0, 2)], ids=str)
def test_rescaled_commutator_is_cubic_in_level(p):
    vals = [lad.rescaled_commutator(p, l, 2) for l in range(3, 8)]
    fourth = vals[4] - 4 * vals[3] + 6 * vals[2] - 4 * vals[1] + vals[0]
    assert fourth == 0
    third = vals[3] - 3 * vals[2] + 3 * vals[1] - vals[0]
    assert third != 0 or p.kappa == 0


def test_plain_commutator_in_plane_is_constant():
    p = ModelParams(0, 2)
    vals = [lad.ladder_commutator(p, l, 1) for l in range(5)]
    diffs = {b - a for a, b in zip(vals, vals[1:])}
    assert len(diffs) == 1
