"""One test per acceptance criterion; each prints (and records) a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` to see the summary at the end of
the session, or ``python tests/test_acceptance.py`` for the plain lines.
"""

import math
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from kappa_landau import ModelParams, StateLabel, admissible_levels, energy, state_density
from kappa_landau import ladder as lad
from kappa_landau import morse as mor
from kappa_landau.eigenfunctions import contraction_deviation, radial_eigenfunction, radial_values
from kappa_landau.numerics import integrate_radial, residual_norm
from kappa_landau.representation import hamiltonian
from kappa_landau.spectrum import default_family
from kappa_landau.verify import VerifyConfig, eigen_grid, run_suite


def _line(number, title, passed, detail, acceptance):
    acceptance(number, title, passed, detail)
    print(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}  {detail}")


def test_criterion_01_energies(acceptance):
    checks = [
        energy(ModelParams(1, 0), l=2) == 3,
        energy(ModelParams(1, 2), l=0) == 1,
        [energy(ModelParams(-1, 2), l=l) for l in (0, 1)] == [1, 2],
        all(isinstance(energy(ModelParams(-1, 2), l=l), Fraction) for l in (0, 1)),
    ]
    _line(1, "spectrum point checks (exact)", all(checks), str(checks), acceptance)
    assert all(checks)


def test_criterion_02_degeneracy_density(acceptance):
    lines = admissible_levels(ModelParams(1, 2), l_max=6)
    dims = [ln.degeneracy for ln in lines]
    ok_dims = dims == [2 * (l + 2) + 1 for l in range(7)] and dims[:3] == [5, 7, 9]
    dens = state_density(ModelParams(1, 2), 0)
    ok_dens = abs(dens - 5 / (4 * math.pi)) < 1e-14
    hyper = admissible_levels(ModelParams(-1, 2))
    ok_hyper = [ln.l for ln in hyper] == [0, 1]
    passed = ok_dims and ok_dens and ok_hyper
    _line(2, "degeneracies, density, hyperbolic level count", passed,
          f"dims={dims[:4]} density_err={abs(dens - 5 / (4 * math.pi)):.1e} levels={len(hyper)}",
          acceptance)
    assert passed


def test_criterion_03_eigen_residuals(acceptance):
    t0 = time.perf_counter()
    worst = 0.0
    count = 0
    for p, l, m in eigen_grid(include_reflected=False):
        R = radial_eigenfunction(p, StateLabel(default_family(p), l, m))
        r_max = p.chart_radius if p.kappa > 0 else 12.0
        grid = (np.arange(200) + 0.5) / 200 * r_max
        worst = max(worst, residual_norm(hamiltonian(p, m), R, float(energy(p, l=l)), grid))
        count += 1
    elapsed = time.perf_counter() - t0
    passed = worst < 1e-8 and elapsed < 10
    _line(3, "eigen-residuals", passed,
          f"{count} states, worst={worst:.2e}, {elapsed:.2f}s", acceptance)
    assert passed


def test_criterion_04_orthonormality(acceptance):
    p = ModelParams(1, 2)
    labels = [StateLabel("lowest", ln.l, m) for ln in admissible_levels(p, l_max=1)
              for m in range(ln.m_min, ln.m_max + 1)]
    funcs = [radial_eigenfunction(p, lab) for lab in labels]
    n = len(labels)
    gram = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if labels[i].m == labels[j].m:
                gram[i, j] = 2 * math.pi * integrate_radial(funcs[i].value, funcs[j].value, p)
    err = float(np.max(np.abs(gram - np.eye(n))))
    _line(4, "Gram matrix kappa=1, beta=2, l in {0,1}", err < 1e-8, f"{n} states, err={err:.1e}",
          acceptance)
    assert err < 1e-8


def test_criterion_05_commutator_suites(acceptance):
    cfg = VerifyConfig(functions=20)
    rows = run_suite("commutators", cfg) + run_suite("gauge", cfg)
    wanted = ("extended algebra commutators", "horizontal-lift commutators",
              "extended Casimir equals lifted Casimir", "local invariance condition of the potential")
    sel = [r for r in rows if r.anchor in wanted]
    worst = max(r.residual for r in sel)
    passed = worst < 1e-6 and len({r.anchor for r in sel}) == 4
    _line(5, "commutators, lifts, gauge PDE, Casimir", passed,
          f"{len(sel)} checks, worst={worst:.1e}", acceptance)
    assert passed


def test_criterion_06_ladder(acceptance):
    rows = run_suite("ladder")
    fact = max(r.residual for r in rows if r.name.startswith("factorization"))
    prop = max(r.residual for r in rows if r.name.startswith("A- proportionality")
               and ("kappa=1," in r.name or "kappa=-1," in r.name))
    tables = all(r.passed for r in rows if r.anchor == "normalizable annihilation segments")
    index = [lad.spectral_flow_index(ModelParams(k, 2)) for k in (1, 0, -1)]
    passed = fact < 1e-8 and prop < 1e-8 and tables and index == [0, 1, 1]
    _line(6, "factorization, proportionality, tables, flow index", passed,
          f"fact={fact:.1e} prop={prop:.1e} tables={tables} index={index}", acceptance)
    assert passed


def test_criterion_07_dual_paths(acceptance):
    worst = 0.0
    for p, l, m in eigen_grid():
        lab = StateLabel(default_family(p), l, m)
        grid = (np.arange(200) + 0.5) / 200 * (p.chart_radius if p.kappa > 0 else 12.0)
        a = radial_values(p, lab, grid, "series")
        b = radial_values(p, lab, grid, "polynomial")
        worst = max(worst, float(np.max(np.abs(a - b)) / np.max(np.abs(a))))
    _line(7, "hypergeometric/Jacobi and confluent/Laguerre agreement", worst < 1e-12,
          f"worst={worst:.1e}", acceptance)
    assert worst < 1e-12


def test_criterion_08_contraction(acceptance):
    t0 = time.perf_counter()
    ns = [8, 16, 32, 64, 128, 256, 512, 1024]
    monotone = True
    final = 0.0
    for m in range(0, 5):
        devs = [contraction_deviation(2, n, 0, m).wavefunction for n in ns]
        monotone &= all(b < a for a, b in zip(devs, devs[1:]))
        final = max(final, devs[-1])
    elapsed = time.perf_counter() - t0
    passed = monotone and final < 1e-2 and elapsed < 30
    _line(8, "contraction kappa = 2 beta/n", passed,
          f"monotone={monotone} dev(1024)={final:.1e} {elapsed:.2f}s", acceptance)
    assert passed


def test_criterion_09_morse(acceptance):
    p = ModelParams(-1, 2)
    levels = mor.morse_discrete_spectrum(p)
    same = [lv.energy for lv in levels] == [ln.energy for ln in admissible_levels(p)]
    thr = mor.continuum_threshold(p)
    a = np.linspace(-5, 15, 801)
    worst = 0.0
    for lv in levels:
        psi, _, _ = mor.separated_eigenfunction(p, lv.l)
        res = mor.reduced_ode_coefficients(p, 0.0).residual(psi, float(lv.E), a)
        worst = max(worst, float(np.max(np.abs(res))))
    passed = same and thr == Fraction(17, 4) and worst < 1e-8
    _line(9, "Morse spectrum, threshold, eigenfunction residual", passed,
          f"same={same} threshold={thr} residual={worst:.1e}", acceptance)
    assert passed


def test_criterion_10_verify_all(acceptance):
    t0 = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "kappa_landau", "verify", "--suite", "all"],
                          capture_output=True, text=True)
    elapsed = time.perf_counter() - t0
    passed = proc.returncode == 0 and elapsed < 60
    _line(10, "verify --suite all", passed, f"exit={proc.returncode} {elapsed:.1f}s", acceptance)
    assert passed, proc.stderr


if __name__ == "__main__":  # pragma: no cover
    sys.exit(pytest.main([__file__, "-q", "-s"]))
