import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kappa_landau import spectrum as sp
from kappa_landau.errors import DomainError, ParameterError
from kappa_landau.representation import ModelParams
from kappa_landau.spectrum import HIGHEST, LOWEST, StateLabel


def test_energy_is_exact_for_integer_levels():
    e = sp.energy(ModelParams(Fraction(1, 2), 3), l=2)
    assert e == Fraction(1, 2) * 3 + 3 * Fraction(5, 2)
    assert isinstance(e, Fraction)


def test_energy_real_level_returns_float():
    assert sp.energy(ModelParams(0, 2), l=0.5) == pytest.approx(2.0)


def test_energy_rejects_wrong_family_and_negative_level():
    with pytest.raises(ParameterError):
        sp.energy(ModelParams(1, 2), HIGHEST, 0)
    with pytest.raises(DomainError):
        sp.energy(ModelParams(1, 2), l=-1)
    with pytest.raises(ParameterError):
        sp.energy(ModelParams(1, 2), "middle", 0)


def test_reflected_field_uses_highest_family():
    p = ModelParams(1, -2)
    assert sp.default_family(p) == HIGHEST
    assert [ln.energy for ln in sp.admissible_levels(p, l_max=2)] == [1, 4, 8]
    assert sp.m_range(p, HIGHEST, 0) == (-4, 0)


def test_sphere_m_range_and_degeneracy():
    p = ModelParams(1, 2)
    assert sp.m_range(p, LOWEST, 1) == (-1, 5)
    assert [ln.degeneracy for ln in sp.admissible_levels(p, l_max=2)] == [5, 7, 9]


def test_plane_levels_are_infinitely_degenerate():
    lines = sp.admissible_levels(ModelParams(0, 2), l_max=3)
    assert len(lines) == 4
    assert all(math.isinf(ln.degeneracy) and math.isinf(ln.m_max) for ln in lines)
    assert lines[0].state_density == pytest.approx(1 / math.pi)


def test_hyperbolic_bounds():
    p = ModelParams(-1, 2)
    assert sp.level_bounds(p) == (Fraction(3, 2), 2)
    assert sp.is_normalizable_level(p, 1) and not sp.is_normalizable_level(p, 2)
    assert sp.level_bounds(ModelParams(1, 2)) == (math.inf, math.inf)


def test_no_bound_states_without_field():
    assert sp.admissible_levels(ModelParams(-1, 0)) == []
    assert sp.admissible_levels(ModelParams(0, 0)) == []
    assert sp.admissible_levels(ModelParams(-2, 1)) == []  # |beta|/|kappa| - 1/2 = 0


def test_free_sphere_keeps_its_levels():
    assert [ln.energy for ln in sp.admissible_levels(ModelParams(1, 0), l_max=3)] == [0, 1, 3, 6]


def test_admissibility():
    p = ModelParams(1, 2)
    assert sp.is_admissible(p, StateLabel(LOWEST, 0, 4))
    assert not sp.is_admissible(p, StateLabel(LOWEST, 0, 5))
    assert not sp.is_admissible(p, StateLabel(HIGHEST, 0, 0))
    assert not sp.is_admissible(ModelParams(-1, 2), StateLabel(LOWEST, 2, 0))


def test_uir_coefficient_examples():
    assert sp.uir_coefficient(ModelParams(0, 1), LOWEST, 0, 0, "+") == pytest.approx(1.0)
    assert sp.uir_coefficient(ModelParams(1, 2), LOWEST, 1, 5, "+") == 0.0
    # (l+m+1)(2 beta + kappa (l-m))/2 = 1 * 4 / 2
    assert sp.uir_coefficient(ModelParams(1, 2), LOWEST, 0, 0, "+") ** 2 == pytest.approx(2.0)


def test_uir_coefficient_outside_representation():
    with pytest.raises(DomainError):
        sp.uir_coefficient(ModelParams(1, 2), LOWEST, 0, -1, "+")
    with pytest.raises(ParameterError):
        sp.uir_coefficient(ModelParams(1, 2), LOWEST, 0, 0, "*")


@given(kappa=st.sampled_from([Fraction(1), Fraction(1, 2), Fraction(0), Fraction(-1, 2)]),
       l=st.integers(0, 3), m=st.integers(0, 6))
def test_raise_then_lower_is_consistent(kappa, l, m):
    """``|J+ (l,m)|`` equals ``|J- (l,m+1)|`` whenever both states exist."""
    p = ModelParams(kappa, 3)
    if not sp.is_normalizable_level(p, l):
        return
    lo, hi = sp.m_range(p, LOWEST, l)
    if not (lo <= m and m + 1 <= hi):
        return
    up = sp.uir_coefficient(p, LOWEST, l, m, "+")
    down = sp.uir_coefficient(p, LOWEST, l, m + 1, "-")
    assert up == pytest.approx(down, rel=1e-14)


def test_state_density_sphere():
    assert sp.state_density(ModelParams(1, 2), 0) == pytest.approx(5 / (4 * math.pi))


def test_total_sphere_states_match_area():
    """Degeneracy = density times the area 4 pi / kappa."""
    p = ModelParams(Fraction(1, 2), 3)
    for ln in sp.admissible_levels(p, l_max=3):
        assert ln.state_density * 4 * math.pi / p.k == pytest.approx(ln.degeneracy)


def test_physical_units():
    u = sp.PhysicalUnits(field=2.0, q=-1.0)
    assert sp.physical_spectrum(u, 0, 0) == pytest.approx(1.0)
    assert sp.beta_from_units(u) == -2.0
    assert sp.dirac_field(3, -1, 1) == pytest.approx(3.0)
    with pytest.raises(ParameterError):
        sp.PhysicalUnits(hbar=0)
    with pytest.raises(ParameterError):
        sp.dirac_field(0, 1, 1)


def test_monopole_spectrum_matches_curved_spectrum():
    n, kappa, e = 4, 0.5, 1.0
    field = sp.dirac_field(n, kappa, e)
    u = sp.PhysicalUnits(field=field, q=-e, n_monopole=n)
    for l in range(4):
        assert sp.monopole_spectrum(u, l) == pytest.approx(sp.physical_spectrum(u, kappa, l))
    with pytest.raises(ParameterError):
        sp.monopole_spectrum(sp.PhysicalUnits(field=1.0), 0)


def test_dimensionless_limit_matches_energy():
    p = ModelParams(-1, 3)
    u = sp.PhysicalUnits(field=3.0)
    for ln in sp.admissible_levels(p):
        assert sp.physical_spectrum(u, -1, ln.l) == pytest.approx(float(ln.energy))


@given(kappa=st.sampled_from([Fraction(1), Fraction(1, 2), Fraction(0)]),
       l=st.integers(0, 3), m=st.integers(-6, 0))
def test_highest_family_raise_then_lower_is_consistent(kappa, l, m):
    """Mirror of the lowest-weight check: the lowering factor carries ``l - m + 1``."""
    p = ModelParams(kappa, -3)
    lo, hi = sp.m_range(p, HIGHEST, l)
    if not (lo <= m - 1 and m <= hi):
        return
    up = sp.uir_coefficient(p, HIGHEST, l, m - 1, "+")
    down = sp.uir_coefficient(p, HIGHEST, l, m, "-")
    assert up == pytest.approx(down, rel=1e-14)
