import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kappa_landau import eigenfunctions as ef
from kappa_landau.errors import DomainError, ParameterError
from kappa_landau.numerics import integrate_radial, residual_norm
from kappa_landau.representation import ModelParams, hamiltonian
from kappa_landau.spectrum import HIGHEST, LOWEST, StateLabel, energy, is_admissible


def _norm2(p, f):
    return integrate_radial(f.value, f.value, p)


def test_normalization_constant_examples():
    nc = ef.normalization_constant
    assert nc(ModelParams(0, 2), StateLabel(LOWEST, 0, 0)).value == pytest.approx(math.sqrt(1 / math.pi))
    assert nc(ModelParams(0, 2), StateLabel(LOWEST, 0, 0), ef.RADIAL_ONLY).value == pytest.approx(math.sqrt(2))
    assert nc(ModelParams(1, 2), StateLabel(LOWEST, 0, 0)).value == pytest.approx(
        math.sqrt(5 / (4 * math.pi)))


def test_unknown_convention():
    with pytest.raises(ParameterError):
        ef.radial_eigenfunction(ModelParams(1, 2), StateLabel(LOWEST, 0, 0), "half")


@pytest.mark.parametrize("kappa", [1, 0, -1])
@pytest.mark.parametrize("l,m", [(0, 0), (0, 3), (1, -1), (1, 2)])
def test_full_surface_normalization(kappa, l, m):
    p = ModelParams(kappa, 2)
    f = ef.radial_eigenfunction(p, StateLabel(LOWEST, l, m))
    assert 2 * math.pi * _norm2(p, f) == pytest.approx(1.0, abs=1e-10)


def test_radial_only_convention():
    p = ModelParams(-1, 2)
    f = ef.radial_eigenfunction(p, StateLabel(LOWEST, 1, 2), ef.RADIAL_ONLY)
    assert _norm2(p, f) == pytest.approx(1.0, abs=1e-10)


def test_sphere_mirror_above_flux():
    """States with ``m`` above ``2 beta/kappa`` exist (up to ``l + N``) and are normalized."""
    p = ModelParams(1, 1)  # N = 2
    for m in (3, 4):
        f = ef.radial_eigenfunction(p, StateLabel(LOWEST, 2, m))
        assert 2 * math.pi * _norm2(p, f) == pytest.approx(1.0, abs=1e-10)
        grid = np.linspace(0.05, math.pi - 0.05, 80)
        assert residual_norm(hamiltonian(p, m), f, float(energy(p, l=2)), grid) < 1e-9


def test_highest_family_is_mirror_of_lowest():
    lo = ef.radial_eigenfunction(ModelParams(1, 2), StateLabel(LOWEST, 1, 3))
    hi = ef.radial_eigenfunction(ModelParams(1, -2), StateLabel(HIGHEST, 1, -3))
    r = np.linspace(0.1, 3.0, 13)
    assert np.allclose(lo(r), hi(r), atol=1e-14)


def test_inadmissible_labels_raise():
    with pytest.raises(DomainError):
        ef.radial_eigenfunction(ModelParams(-1, 2), StateLabel(LOWEST, 2, 0))
    with pytest.raises(DomainError):
        ef.radial_eigenfunction(ModelParams(1, 2), StateLabel(LOWEST, 0, 5))
    with pytest.raises(DomainError):
        ef.radial_values(ModelParams(0, 2), StateLabel(LOWEST, 0, 0.5), [1.0], "polynomial")


@settings(max_examples=25)
@given(kappa=st.sampled_from([1, 0, -1]), l=st.integers(0, 1), m=st.integers(-1, 6))
def test_dual_evaluation_paths_agree(kappa, l, m):
    p = ModelParams(kappa, 2)
    lab = StateLabel(LOWEST, l, m)
    if not is_admissible(p, lab):
        return
    r = np.linspace(0.05, 3.0, 40)
    a = ef.radial_values(p, lab, r, "series")
    b = ef.radial_values(p, lab, r, "polynomial")
    assert np.max(np.abs(a - b)) <= 1e-12 * np.max(np.abs(a))


def test_unknown_path():
    with pytest.raises(ParameterError):
        ef.radial_values(ModelParams(0, 2), StateLabel(LOWEST, 0, 0), [1.0], "spline")


def test_analytic_derivatives_match_differences():
    p = ModelParams(-1, 3)
    f = ef.radial_eigenfunction(p, StateLabel(LOWEST, 2, 1))
    r, h = np.linspace(0.3, 4, 11), 1e-5
    assert np.allclose(f.d1(r), (f.value(r + h) - f.value(r - h)) / (2 * h), atol=1e-8)
    assert np.allclose(f.d2(r), (f.d1(r + h) - f.d1(r - h)) / (2 * h), atol=1e-7)


def test_moving_state_normalized_by_quadrature():
    p = ModelParams(0, 2)
    f = ef.radial_eigenfunction(p, StateLabel(LOWEST, 0, 0.25))
    assert 2 * math.pi * _norm2(p, f) == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("kappa", [1, 0, -1])
def test_lowest_level_function_normalized(kappa):
    p = ModelParams(kappa, 2)
    f = ef.lowest_level_function(p, 2)
    assert _norm2(p, f) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("kappa", [1, 0, -1])
@pytest.mark.parametrize("m", [0, 1, 3])
def test_prefactor_is_lowest_level_profile(kappa, m):
    p = ModelParams(kappa, 2)
    r = np.linspace(0.2, 2.5, 9)
    ratio = ef.level_prefactor(p, m, r) / ef.lowest_level_function(p, m, normalized=False)(r)
    assert np.allclose(ratio, ratio[0], rtol=1e-12)


@pytest.mark.slow
def test_raising_tower_reproduces_closed_form():
    p = ModelParams(1, 1)
    states = ef.build_level_by_raising(p, 1, count=3)
    assert [s.m for s in states] == [-1, 0, 1]
    r = np.linspace(0.2, 3.0, 9)
    for s in states:
        ref = ef.radial_eigenfunction(p, StateLabel(LOWEST, 1, int(s.m)))
        assert np.allclose(np.real(s.value(r)), ref(r), atol=1e-7)


def test_raising_rejects_bad_input():
    with pytest.raises(ParameterError):
        ef.build_level_by_raising(ModelParams(1, 1), 0, 0)
    with pytest.raises(DomainError):
        ef.build_level_by_raising(ModelParams(-1, 2), 3, 1)


def test_vacuum_seed_sector():
    assert ef.vacuum_seed(ModelParams(1, 2), 2).m == -2
    assert ef.vacuum_seed(ModelParams(1, -2), 2).m == 2


# --- contraction ---------------------------------------------------------------

def test_contraction_grid_excludes_origin():
    g = ef.contraction_grid()
    assert g[0] > 0 and g[-1] == 4.0 and len(g) == 20


def test_plane_has_zero_deviation():
    d = ef.contraction_deviation(2, None, 1, 2)
    assert (d.constant, d.envelope, d.hypergeometric, d.wavefunction) == (0, 0, 0, 0)


def test_contraction_input_checks():
    with pytest.raises(ParameterError):
        ef.contraction_deviation(2, 0, 0, 0)
    with pytest.raises(ParameterError):
        ef.contraction_deviation(-1, 8, 0, 0)


@pytest.mark.parametrize("l", [0, 1, 2])
def test_wavefunction_contraction_monotone(l):
    ns = [8, 32, 128, 512, 2048]
    for m in (0, 2, 4):
        devs = [ef.contraction_deviation(2, n, l, m).wavefunction for n in ns]
        assert all(b < a for a, b in zip(devs, devs[1:]))
        assert devs[-1] < 1e-2


def test_constant_limit_changes_sign_for_excited_level():
    """For ``l = 1, m = 4`` the curved constant crosses the planar one near ``n = 10``.

    The relative distance therefore dips before growing and then decays like
    ``1/n``; only the overall limit is monotone from ``n = 16`` on.
    """
    devs = {n: ef.contraction_deviation(2, n, 1, 4).constant for n in (8, 16, 64, 256, 1024)}
    assert devs[16] > devs[8]
    assert devs[16] > devs[64] > devs[256] > devs[1024]
    assert devs[1024] < 1e-3
