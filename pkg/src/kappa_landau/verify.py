"""Identity-verification engine.

Each suite evaluates a family of identities and returns :class:`CheckResult`
rows.  A row passes when its residual does not exceed its tolerance.  Rows
marked ``exact`` compare integers, rationals or tables; the global tolerance
override leaves them alone because loosening or tightening it has no
meaning there.

Suites: ``commutators``, ``gauge``, ``residuals``, ``orthonormality``,
``ladder``, ``morse`` and ``contraction``; ``all`` runs every one of them in
that order.  Randomness (test functions, sample points) comes from a single
``numpy`` generator seeded by :attr:`VerifyConfig.seed`, so reports are
reproducible.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence

import numpy as np
from numpy.polynomial import Polynomial
from scipy.integrate import quad

from . import geometry as geo
from . import ladder as lad
from . import morse as mor
from . import oracle
from .eigenfunctions import (
    contraction_deviation,
    level_prefactor,
    lowest_level_function,
    radial_eigenfunction,
    radial_values,
    vacuum_seed,
)
from .errors import ParameterError, PoleError
from .numerics import SectorFunction, fd_derivative, residual_norm
from .representation import ModelParams, RadialFunction, casimir_hamiltonian, field_strength, hamiltonian
from .spectrum import (
    HIGHEST,
    LOWEST,
    StateLabel,
    admissible_levels,
    default_family,
    energy,
    uir_coefficient,
)

__all__ = [
    "CheckResult",
    "VerifyConfig",
    "SUITES",
    "run_suite",
    "run",
    "all_passed",
    "eigen_grid",
]

SUITES = ("commutators", "gauge", "residuals", "orthonormality", "ladder", "morse", "contraction")

CONTRACTION_NS = (8, 16, 32, 64, 128, 256, 512, 1024)


@dataclass(frozen=True)
class CheckResult:
    """One verified identity: where it comes from, how far off it is, and the verdict."""

    suite: str
    name: str
    anchor: str
    residual: float
    tol: float
    passed: bool
    exact: bool = False

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class VerifyConfig:
    """Knobs shared by every suite.

    ``tol`` replaces the tolerance of every non-exact check; ``functions`` and
    ``points`` size the random test-function battery of the oracle suites.
    """

    tol: Optional[float] = None
    seed: int = 0
    functions: int = 20
    points: int = 10
    gauge_points: int = 100

    def rng(self, salt: int = 0) -> np.random.Generator:
        return np.random.default_rng([self.seed, salt])


class _Collector:
    def __init__(self, suite: str, config: VerifyConfig):
        self.suite = suite
        self.config = config
        self.rows: List[CheckResult] = []

    def add(self, name: str, anchor: str, residual: float, tol: float) -> None:
        tol = tol if self.config.tol is None else self.config.tol
        residual = float(residual)
        ok = bool(np.isfinite(residual) and residual <= tol)
        self.rows.append(CheckResult(self.suite, name, anchor, residual, float(tol), ok))

    def exact(self, name: str, anchor: str, mismatches: float) -> None:
        self.rows.append(
            CheckResult(self.suite, name, anchor, float(mismatches), 0.0, mismatches == 0, True))


# --- shared grids ---------------------------------------------------------------------

def eigen_grid(include_reflected: bool = True):
    """``(params, l, m)`` triples of the eigen-residual battery.

    Curved surfaces ``kappa in {1, 1/2, -1/2, -1}`` with ``beta = 2``, ``l <= 2``
    and ``|m| <= 6``; the plane with ``beta = 2``, ``l <= 3`` and ``m <= 6``.
    ``include_reflected`` adds the highest-weight mirrors (``beta = -2``) on
    the standard surfaces.
    """
    grid = []
    specs = [(Fraction(1), 2), (Fraction(1, 2), 2), (Fraction(-1, 2), 2), (Fraction(-1), 2)]
    l_caps = {0: 3}
    if include_reflected:
        specs += [(Fraction(1), -2), (Fraction(-1), -2), (Fraction(0), -2)]
    specs.insert(2, (Fraction(0), 2))
    for kappa, beta in specs:
        p = ModelParams(kappa, beta)
        for line in admissible_levels(p, l_max=l_caps.get(kappa, 2) if beta > 0 or kappa else 2):
            lo = max(line.m_min, -6)
            hi = min(line.m_max, 6)
            for m in range(int(lo), int(hi) + 1):
                grid.append((p, line.l, m))
    return grid


def _chart_grid(p: ModelParams, n: int = 200) -> np.ndarray:
    r_max = p.chart_radius if p.kappa > 0 else 12.0
    return (np.arange(n) + 0.5) / n * r_max


def _label(p: ModelParams, l, m) -> StateLabel:
    return StateLabel(default_family(p), l, m)


def _fmt_k(p: ModelParams) -> str:
    return f"kappa={p.kappa},beta={p.beta}"


# --- commutators ----------------------------------------------------------------------

_EXT_PAIRS = (("J01", "J02"), ("J12", "J01"), ("J12", "J02"))


def _oracle_radius(kappa: float) -> float:
    return 2.5 if kappa > 0 else 4.0


def _extended_residual(ops, sc, a, b, f, r, th) -> float:
    lhs = (ops[a].apply(ops[b].apply(f)) - ops[b].apply(ops[a].apply(f)))(r, th)
    for k, c in sc[(a, b)].items():
        lhs = lhs - c * ops[k].apply(f)(r, th)
    if (a, b) == ("J01", "J02"):
        lhs = lhs - 1j * ops["B"].apply(f)(r, th)
    return float(np.max(np.abs(lhs)))


def _lift_residual(ops, lift, sc, a, b, f, r, th) -> float:
    lhs = (ops[a].apply(lift[b].apply(f)) - lift[b].apply(ops[a].apply(f)))(r, th)
    for k, c in sc[(a, b)].items():
        lhs = lhs - c * lift[k].apply(f)(r, th)
    return float(np.max(np.abs(lhs)))


def _random_radial(rng: np.random.Generator, m: int) -> RadialFunction:
    """``r**|m| p(r) exp(-r**2)`` with a random real cubic ``p`` and analytic derivatives."""
    q = Polynomial.basis(abs(m)) * Polynomial(rng.normal(size=4))
    q1, q2 = q.deriv(), q.deriv(2)
    x = Polynomial([0, 1])

    def value(r):
        return q(r) * np.exp(-np.asarray(r) ** 2)

    def d1(r):
        return (q1 - 2 * x * q)(r) * np.exp(-np.asarray(r) ** 2)

    def d2(r):
        return (q2 - 2 * q - 4 * x * q1 + 4 * x * x * q)(r) * np.exp(-np.asarray(r) ** 2)

    return RadialFunction(float(m), value, d1, d2)


def _suite_commutators(col: _Collector) -> None:
    cfg = col.config
    beta = 2.0
    for idx, kappa in enumerate((1.0, 0.0, -1.0)):
        rng = cfg.rng(100 + idx)
        ops = oracle.extended_operators(kappa, beta)
        lift = oracle.lifted_operators(kappa, beta)
        sc = oracle.structure_constants(kappa)
        radius = _oracle_radius(kappa)
        worst_ext = {pair: 0.0 for pair in _EXT_PAIRS}
        worst_lift = {(a, b): 0.0 for a in oracle.GENERATOR_NAMES for b in oracle.GENERATOR_NAMES}
        worst_cas = 0.0
        for _ in range(cfg.functions):
            f = oracle.random_test_function(rng, radius)
            r = rng.uniform(0.3, 0.9 * radius, cfg.points)
            th = rng.uniform(0.0, 2 * math.pi, cfg.points)
            for a, b in _EXT_PAIRS:
                worst_ext[(a, b)] = max(worst_ext[(a, b)],
                                        _extended_residual(ops, sc, a, b, f, r, th))
            for a, b in worst_lift:
                worst_lift[(a, b)] = max(worst_lift[(a, b)],
                                         _lift_residual(ops, lift, sc, a, b, f, r, th))
            d = oracle.casimir_extended(kappa, beta, f) - oracle.casimir_lifted(kappa, beta, f)
            worst_cas = max(worst_cas, float(np.max(np.abs(d(r, th)))))
        tag = f"kappa={kappa:g}"
        for (a, b), res in worst_ext.items():
            col.add(f"[{a},{b}] {tag}", "extended algebra commutators", res, 1e-6)
        for (a, b), res in worst_lift.items():
            col.add(f"[{a},{b}*] {tag}", "horizontal-lift commutators", res, 1e-6)
        col.add(f"casimir {tag}", "extended Casimir equals lifted Casimir", worst_cas, 1e-6)

    # the two-parameter generators close on the same extended algebra
    for idx, (kappa, lam, b) in enumerate(((1.0, 0.5, 2.0), (-1.0, 1.5, 2.0))):
        rng = cfg.rng(200 + idx)
        ops = oracle.general_operators(kappa, lam, b)
        sc = oracle.structure_constants(kappa)
        radius = _oracle_radius(kappa)
        worst = 0.0
        for _ in range(max(1, cfg.functions // 4)):
            f = oracle.random_test_function(rng, radius)
            r = rng.uniform(0.3, 0.9 * radius, cfg.points)
            th = rng.uniform(0.0, 2 * math.pi, cfg.points)
            for a, bb in _EXT_PAIRS:
                worst = max(worst, _extended_residual(ops, sc, a, bb, f, r, th))
        col.add(f"two-parameter generators kappa={kappa:g} lambda={lam:g} b={b:g}",
                "two-parameter induced generators", worst, 1e-6)

    # radial side: the shift coefficients reproduce the Casimir value 2E
    for kappa, beta_r in ((1, 2), (Fraction(1, 2), 2), (0, 2), (-1, 2), (1, -2), (-1, -2)):
        p = ModelParams(kappa, beta_r)
        fam = default_family(p)
        worst = 0.0
        for line in admissible_levels(p, l_max=3):
            cbar = 2 * float(line.energy)
            for m in range(int(max(line.m_min, -6)), int(min(line.m_max, 6)) + 1):
                # mirror the highest-weight family onto the lowest-weight formula
                mm, bb = (m, p.b) if fam == LOWEST else (-m, -p.b)
                dn, up = ("-", "+") if fam == LOWEST else ("+", "-")
                cm = uir_coefficient(p, fam, line.l, m, dn)
                cp = uir_coefficient(p, fam, line.l, m, up)
                lo = 2 * cm * cm + p.k * (mm * mm - mm) - 2 * bb * mm + bb
                hi = 2 * cp * cp + p.k * (mm * mm + mm) - 2 * bb * mm - bb
                worst = max(worst, abs(lo - cbar) / cbar, abs(hi - cbar) / cbar)
        col.add(f"shift coefficients {_fmt_k(p)}", "Casimir value of the shift coefficients",
                worst, 1e-12)

    # radial Hamiltonian written three ways
    rng = cfg.rng(300)
    for kappa in (Fraction(1), Fraction(1, 2), Fraction(0), Fraction(-1)):
        p = ModelParams(kappa, 2)
        r_max = 0.95 * p.chart_radius if kappa > 0 else 4.0
        r = np.linspace(0.05, r_max, 60)
        worst = 0.0
        for _ in range(cfg.functions):
            m = int(rng.integers(-3, 4))
            f = _random_radial(rng, m)
            a = hamiltonian(p, m, "minimal").evaluate(f, r)
            b = hamiltonian(p, m, "expanded").evaluate(f, r)
            c = casimir_hamiltonian(p, m).evaluate(f, r)
            scale = max(np.max(np.abs(a)), 1e-300)
            worst = max(worst, np.max(np.abs(a - b)) / scale, np.max(np.abs(a - c)) / scale)
        col.add(f"hamiltonian forms {_fmt_k(p)}",
                "Casimir Hamiltonian equals the minimal-coupling Hamiltonian", worst, 1e-10)


# --- gauge ----------------------------------------------------------------------------

def _suite_gauge(col: _Collector) -> None:
    cfg = col.config
    cases = [("extended", k, oracle.extended_potential(k, 2.0)) for k in (1.0, 0.0, -1.0)]
    cases += [("two-parameter", k, oracle.general_potential(k, lam, b))
              for k, lam, b in ((1.0, 0.7, 2.0), (-1.0, 0.5, 2.0), (0.5, 1.5, 0.3))]
    for idx, (kind, kappa, (a_theta, phi)) in enumerate(cases):
        rng = cfg.rng(400 + idx)
        r_hi = 0.9 * geo.chart_radius(kappa) if kappa > 0 else 3.0
        worst = 0.0
        for _ in range(cfg.gauge_points):
            point = (rng.uniform(0.2, r_hi), rng.uniform(0.0, 2 * math.pi))
            worst = max(worst, oracle.gauge_pde_residual(kappa, a_theta, phi, point))
        col.add(f"{kind} potential kappa={kappa:g}", "local invariance condition of the potential",
                worst, 1e-8)

    # curl of the potential is beta times the area element
    for kappa in (Fraction(1), Fraction(0), Fraction(-1), Fraction(1, 2)):
        p = ModelParams(kappa, 2)
        r = np.linspace(0.1, 0.9 * p.chart_radius if kappa > 0 else 5.0, 40)
        curl = fd_derivative(lambda x: p.b * geo.versine(p.k, x), r)
        res = np.max(np.abs(curl - field_strength(p, r)) / geo.measure_weight(p.k, r))
        col.add(f"field strength {_fmt_k(p)}", "constant magnetic field per unit area", res, 1e-8)


# --- eigenfunctions -------------------------------------------------------------------

def _suite_residuals(col: _Collector) -> None:
    worst_res: Dict[str, float] = {}
    worst_dual: Dict[str, float] = {}
    for p, l, m in eigen_grid():
        label = _label(p, l, m)
        R = radial_eigenfunction(p, label)
        grid = _chart_grid(p)
        eps = float(energy(p, None, l))
        key = _fmt_k(p)
        res = residual_norm(hamiltonian(p, m), R, eps, grid)
        worst_res[key] = max(worst_res.get(key, 0.0), res)
        series = radial_values(p, label, grid, "series")
        poly = radial_values(p, label, grid, "polynomial")
        dual = np.max(np.abs(series - poly)) / np.max(np.abs(series))
        worst_dual[key] = max(worst_dual.get(key, 0.0), float(dual))
    for key, res in worst_res.items():
        col.add(f"eigen-residual {key}", "Schroedinger equation for the eigenvalue", res, 1e-8)
    for key, res in worst_dual.items():
        kind = "confluent vs Laguerre" if "kappa=0," in key else "hypergeometric vs Jacobi"
        col.add(f"dual paths {key}", f"{kind} evaluation", res, 1e-12)

    # the stripping factor is the lowest-level profile
    r = np.linspace(0.05, 2.5, 40)
    for kappa in (Fraction(1), Fraction(1, 2), Fraction(0), Fraction(-1, 2), Fraction(-1)):
        p = ModelParams(kappa, 2)
        worst = 0.0
        for m in range(0, 5):
            fac = level_prefactor(p, m, r)
            const = abs(p.k) ** (m / 2) if p.kappa != 0 else (2 * p.b) ** (m / 2)
            low = const * lowest_level_function(p, m, normalized=False)(r)
            worst = max(worst, float(np.max(np.abs(fac - low)) / np.max(np.abs(fac))))
        col.add(f"prefactor {_fmt_k(p)}", "factor function coincides with the lowest level",
                worst, 1e-12)


def _gram(p: ModelParams, labels: Sequence[StateLabel], n_theta: int = 64) -> np.ndarray:
    """Overlaps ``<Psi_i, Psi_j>`` with the surface measure ``S dr dtheta``.

    The angular integral uses the equispaced rule, exact for the trigonometric
    polynomials involved.
    """
    from .numerics import integrate_radial

    funcs = [radial_eigenfunction(p, lab) for lab in labels]
    theta = 2 * math.pi * np.arange(n_theta) / n_theta
    n = len(labels)
    gram = np.zeros((n, n))
    for i in range(n):
        for j in range(i, n):
            ang = np.mean(np.exp(1j * (float(labels[j].m) - float(labels[i].m)) * theta)) * 2 * math.pi
            if abs(ang) < 1e-13:
                val = 0.0
            else:
                val = (ang * integrate_radial(funcs[i].value, funcs[j].value, p)).real
            gram[i, j] = gram[j, i] = val
    return gram


def _suite_orthonormality(col: _Collector) -> None:
    cases = [
        (ModelParams(1, 2), 1, (-6, 6)),
        (ModelParams(Fraction(1, 2), 2), 1, (-3, 5)),
        (ModelParams(0, 2), 2, (-2, 3)),
        (ModelParams(-1, 2), 1, (-1, 4)),
        (ModelParams(1, -2), 1, (-6, 6)),
    ]
    for p, l_max, (lo, hi) in cases:
        labels = []
        for line in admissible_levels(p, l_max=l_max):
            for m in range(int(max(line.m_min, lo)), int(min(line.m_max, hi)) + 1):
                labels.append(_label(p, line.l, m))
        gram = _gram(p, labels)
        res = float(np.max(np.abs(gram - np.eye(len(labels)))))
        col.add(f"gram {_fmt_k(p)} l<={l_max} ({len(labels)} states)",
                "orthonormality under the invariant measure", res, 1e-8)

    # square-integrability boundary on the hyperbolic plane (kappa=-1, beta=2: l < 3/2)
    p = ModelParams(-1, 2)
    norms = {}
    for l in (1, 2):
        seed = vacuum_seed(p, l)

        def integrand(r, seed=seed):
            return seed(r) ** 2 * geo.measure_weight(-1.0, r)

        norms[l] = [quad(integrand, 0, rr, limit=400, epsrel=1e-13)[0] for rr in (40.0, 80.0)]
    settle = abs(norms[1][1] - norms[1][0]) / norms[1][1]
    col.add("seed l=1 kappa=-1,beta=2 converges", "square-integrable levels l < beta/|kappa| - 1/2",
            settle, 1e-10)
    col.exact("seed l=2 kappa=-1,beta=2 diverges", "square-integrable levels l < beta/|kappa| - 1/2",
              0 if norms[2][1] > 1e6 * norms[2][0] else 1)


# --- ladder ---------------------------------------------------------------------------

_TABLE = {
    # (kappa, beta) -> line id -> predicate on integer m in [-6, 6]
    (1, 2): {"i": lambda m: m <= 0, "ii": lambda m: 0 <= m <= 4, "iii": lambda m: False,
             "iv": lambda m: m >= 4},
    (0, 2): {"i": lambda m: m <= 0, "ii": lambda m: m >= 0},
    (-1, 2): {"i": lambda m: -1.5 < m <= 0, "ii": lambda m: m >= 0, "iii": lambda m: False,
              "iv": lambda m: False},
}


def _sup_rel(values, scale_values) -> float:
    scale = np.max(np.abs(scale_values))
    return float(np.max(np.abs(values)) / scale) if scale > 0 else float(np.max(np.abs(values)))


def _suite_ladder(col: _Collector) -> None:
    cfg = col.config
    # factorization on the eigenfunctions
    for kappa in (Fraction(1), Fraction(1, 2), Fraction(0), Fraction(-1, 2), Fraction(-1)):
        p = ModelParams(kappa, 2)
        grid = _chart_grid(p, 120)
        worst_fact = worst_level = 0.0
        for line in admissible_levels(p, l_max=2):
            l = line.l
            for m in range(int(max(line.m_min, -4)), int(min(line.m_max, 4)) + 1):
                R = radial_eigenfunction(p, _label(p, l, m))
                try:
                    fc = lad.factorization_coeffs(p, l, m)
                except PoleError:
                    continue
                prod = lad.ladder_operator(p, l, m, "+").compose(lad.ladder_operator(p, l, m, "-"))
                lhs = prod.evaluate(R, grid) + float(fc.delta_l) * R(grid)
                lev = lad.level_operator(p, l, m).evaluate(R, grid)
                worst_fact = max(worst_fact, _sup_rel(lhs - lev, R(grid)))
                worst_level = max(worst_level, _sup_rel(lev, R(grid)))
        col.add(f"factorization {_fmt_k(p)}", "factorized level operator A+A- + delta",
                worst_fact, 1e-8)
        col.add(f"level operator kills eigenfunctions {_fmt_k(p)}",
                "factorized level operator A+A- + delta", worst_level, 1e-8)

    # partner identity A_l^- A_l^+ + delta_l = E_{l-1} on random functions
    rng = cfg.rng(500)
    for kappa in (Fraction(1), Fraction(0), Fraction(-1)):
        p = ModelParams(kappa, 2)
        r = np.linspace(0.05, 0.95 * p.chart_radius if kappa > 0 else 4.0, 60)
        worst = 0.0
        for _ in range(10):
            m = int(rng.integers(-3, 4))
            l = int(rng.integers(1, 4)) if kappa >= 0 else 1
            f = _random_radial(rng, m)
            fc = lad.factorization_coeffs(p, l, m)
            prod = lad.ladder_operator(p, l, m, "-").compose(lad.ladder_operator(p, l, m, "+"))
            lhs = prod.evaluate(f, r) + float(fc.delta_l) * f(r)
            rhs = lad.level_operator(p, l - 1, m).evaluate(f, r)
            worst = max(worst, _sup_rel(lhs - rhs, rhs))
        col.add(f"partner identity {_fmt_k(p)}", "partner factorization A-A+ + delta",
                worst, 1e-10)

    # A^- lowers an eigenfunction to the level below, same sector
    for kappa in (Fraction(1), Fraction(-1), Fraction(0)):
        p = ModelParams(kappa, 2)
        grid = _chart_grid(p, 120)
        worst = 0.0
        for line in admissible_levels(p, l_max=2):
            l = line.l
            if l == 0:
                continue
            for m in range(int(max(line.m_min, -4)), int(min(line.m_max, 4)) + 1):
                R = radial_eigenfunction(p, _label(p, l, m))
                out = lad.ladder_operator(p, l, m, "-").evaluate(R, grid)
                below = _label(p, l - 1, m)
                try:
                    target = radial_eigenfunction(p, below)(grid)
                except Exception:
                    worst = max(worst, _sup_rel(out, R(grid)))
                    continue
                coef = float(np.dot(out, target) / np.dot(target, target))
                worst = max(worst, _sup_rel(out - coef * target, out))
        col.add(f"A- proportionality {_fmt_k(p)}", "ladder operators connect consecutive levels",
                worst, 1e-8)

    # vacua are annihilated
    for kappa in (Fraction(1), Fraction(0), Fraction(-1)):
        p = ModelParams(kappa, 2)
        r = np.linspace(0.1, 0.9 * p.chart_radius if kappa > 0 else 4.0, 50)
        worst = 0.0
        for m in (-1, 0, 1, 2):
            for which, l in (("-", 0), ("-", -m if m <= 0 else 0)):
                v = lad.vacuum_state(p, l, m, which)
                out = lad.ladder_operator(p, l, m, "-").evaluate(v, r)
                worst = max(worst, _sup_rel(out, v(r)))
        col.add(f"vacuum annihilation {_fmt_k(p)}", "A- annihilates its vacuum", worst, 1e-8)

    # tables of normalizable annihilation segments
    for (kappa, beta), table in _TABLE.items():
        p = ModelParams(kappa, beta)
        lines = {ln.id: ln for ln in lad.annihilation_lines(p, "-")}
        mism = 0 if set(lines) == set(table) else 1
        kernel_mism = 0
        for lid, pred in table.items():
            if lid not in lines:
                continue
            for m in range(-6, 7):
                got = bool(lines[lid].normalizable_condition(Fraction(m)))
                mism += got != pred(m)
                # the closed-form ranges agree with the kernel exponents
                l = lines[lid].l_of_m(m)
                try:
                    by_kernel = lad.kernel_is_normalizable(lad.kernel_exponents(p, l, m, "-"))
                except PoleError:
                    continue
                kernel_mism += by_kernel != got
        col.exact(f"annihilation table {_fmt_k(p)}", "normalizable annihilation segments", mism)
        col.exact(f"table vs kernel exponents {_fmt_k(p)}", "normalizable annihilation segments",
                  kernel_mism)
    p0 = ModelParams(0, 2)
    plus_ids = sorted(ln.id for ln in lad.annihilation_lines(p0, "+"))
    never = all(not ln.normalizable_condition(Fraction(m)) for ln in lad.annihilation_lines(p0, "+")
                for m in range(-6, 7))
    col.exact("A+ lines kappa=0", "normalizable annihilation segments",
              0 if plus_ids == ["iii'", "iv'"] and never else 1)

    # lattice at alpha = 0 equals the unitary spectrum
    for kappa in (Fraction(1), Fraction(0), Fraction(-1)):
        p = ModelParams(kappa, 2)
        lat = {(int(s.l), int(s.m)) for s in lad.normalizable_lattice(p, 0.0, 2, (-6, 6))}
        ref = set()
        for line in admissible_levels(p, l_max=2):
            for m in range(int(max(line.m_min, -6)), int(min(line.m_max, 6)) + 1):
                ref.add((line.l, m))
        col.exact(f"lattice = spectrum {_fmt_k(p)}", "ladder and shift operators share the lattice",
                  len(lat ^ ref))

    # moving states break the sector for alpha != 0
    for kappa in (Fraction(1), Fraction(0), Fraction(-1)):
        p = ModelParams(kappa, 2)
        still = len(lad.escaping_images(p, 0.0))
        broken = all(len(lad.escaping_images(p, a)) > 0 for a in (0.25, 0.5))
        col.exact(f"moving states {_fmt_k(p)}", "moving states leave the physical space",
                  still + (0 if broken else 1))

    # spectral flow index
    for kappa, want in ((1, 0), (0, 1), (-1, 1)):
        p = ModelParams(kappa, 2)
        col.exact(f"flow index {_fmt_k(p)} = {want}", "spectral flow index",
                  abs(lad.spectral_flow_index(p) - want))

    # rescaled commutator is a cubic in l: fifth point lies on the fitted cubic
    for kappa, beta in ((1, 2), (Fraction(1, 2), 2), (-1, 2), (0, 2), (2, 1)):
        p = ModelParams(kappa, beta)
        bad = 0
        for m in range(-3, 4):
            ls = range(3, 8)
            vals = [Fraction(lad.rescaled_commutator(p, l, m)) for l in ls]
            diffs = vals
            for _ in range(4):
                diffs = [b - a for a, b in zip(diffs, diffs[1:])]
            bad += diffs[0] != 0
        col.exact(f"cubic commutator {_fmt_k(p)}", "cubic commutation relations", bad)


# --- Morse ----------------------------------------------------------------------------

def _suite_morse(col: _Collector) -> None:
    for kappa, beta in ((-1, 2), (Fraction(-1, 2), 2), (-4, 2), (-1, 3), (-1, -2)):
        p = ModelParams(kappa, beta)
        levels = mor.morse_discrete_spectrum(p)
        ref = [line.energy for line in admissible_levels(p)]
        mism = abs(len(levels) - len(ref)) + sum(
            lv.energy != e for lv, e in zip(levels, ref))
        col.exact(f"spectrum {_fmt_k(p)}", "Morse levels agree with the Landau levels", mism)
        thr = mor.continuum_threshold(p)
        col.exact(f"below threshold {_fmt_k(p)}", "discrete levels lie below the continuum",
                  sum(1 for lv in levels if not lv.E < thr))
    col.exact("threshold kappa=-1,beta=2 = 17/4", "continuum threshold",
              0 if mor.continuum_threshold(ModelParams(-1, 2)) == Fraction(17, 4) else 1)

    a = np.linspace(-5.0, 15.0, 801)
    for kappa, beta, lam in ((-1, 2, 0.0), (-1, 2, 0.6), (Fraction(-1, 2), 2, 0.0), (-1, 3, -0.4)):
        p = ModelParams(kappa, beta)
        ode = mor.reduced_ode_coefficients(p, lam)
        worst = 0.0
        for lv in mor.morse_discrete_spectrum(p):
            psi, _, _ = mor.separated_eigenfunction(p, lv.l, lam)
            res = ode.residual(psi, float(lv.E), a)
            worst = max(worst, float(np.max(np.abs(res))))
        col.add(f"Morse eigenfunction {_fmt_k(p)} lambda={lam:g}",
                "separated equation in the horocyclic coordinate", worst, 1e-8)

    # confluent equation: 2s plays the role of m
    bad = 0
    for kappa, beta in ((-1, 2), (-1, 3), (Fraction(-1, 2), 2)):
        p = ModelParams(kappa, beta)
        for lv in mor.morse_discrete_spectrum(p):
            a_par, c_par = mor.confluent_parameters(p, lv)
            bad += a_par != -lv.l or c_par != float(2 * lv.s + 1)
    col.exact("confluent parameters", "Morse and planar confluent equations coincide", bad)

    # separation phase: its b-derivative is the straightening integrand
    p = ModelParams(-1, 2)
    aa = np.linspace(-1.0, 1.5, 11)
    worst = 0.0
    for bb in (-0.8, 0.3, 1.1):
        for av in aa:
            dphase = fd_derivative(lambda t: mor.separation_phase(p, av, t), bb)
            worst = max(worst, abs(float(dphase) - float(mor.separation_integrand(p, av, bb))))
    col.add("separation phase", "R-separation phase", worst, 1e-8)

    # near-flat hyperbolic plane: the lowest level approaches the harmonic value
    p = ModelParams(Fraction(-1, 1000), 2)
    lowest = float(mor.reduced_ode_eigenvalues(p, 0.0, count=1)[0]) / 2
    col.add("harmonic limit kappa=-1/1000", "horocyclic coordinates become cartesian",
            abs(lowest - 1.0), 1e-2)


# --- contraction ----------------------------------------------------------------------

def _monotone_excess(values: Sequence[float]) -> float:
    """Largest increase between consecutive entries (0 when non-increasing)."""
    return float(max([0.0] + [b - a for a, b in zip(values, values[1:])]))


def _suite_contraction(col: _Collector) -> None:
    beta = 2
    for m in range(0, 5):
        devs = [contraction_deviation(beta, n, 0, m) for n in CONTRACTION_NS]
        for field_name in ("wavefunction", "constant", "envelope", "hypergeometric"):
            vals = [getattr(d, field_name) for d in devs]
            col.add(f"{field_name} l=0 m={m} monotone", "well defined contraction process",
                    _monotone_excess(vals), 0.0)
            col.add(f"{field_name} l=0 m={m} n=1024", "well defined contraction process",
                    vals[-1], 1e-2)
    for l in (1, 2):
        for m in range(-l, 5):
            vals = [contraction_deviation(beta, n, l, m).wavefunction for n in CONTRACTION_NS]
            col.add(f"wavefunction l={l} m={m} monotone", "well defined contraction process",
                    _monotone_excess(vals), 0.0)
            col.add(f"wavefunction l={l} m={m} n=1024", "well defined contraction process",
                    vals[-1], 1e-2)
    bad = 0
    for n in CONTRACTION_NS:
        p = ModelParams(Fraction(2 * beta, n), beta)
        bad += sum(line.degeneracy != n + 2 * line.l + 1 for line in admissible_levels(p, l_max=3))
    col.exact("degeneracy n + 2l + 1", "finite representations contract to infinite ones", bad)


_RUNNERS: Dict[str, Callable[[_Collector], None]] = {
    "commutators": _suite_commutators,
    "gauge": _suite_gauge,
    "residuals": _suite_residuals,
    "orthonormality": _suite_orthonormality,
    "ladder": _suite_ladder,
    "morse": _suite_morse,
    "contraction": _suite_contraction,
}


def run_suite(name: str, config: Optional[VerifyConfig] = None) -> List[CheckResult]:
    """Run one named suite and return its rows in a fixed order."""
    if name not in _RUNNERS:
        raise ParameterError(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    col = _Collector(name, config or VerifyConfig())
    _RUNNERS[name](col)
    return col.rows


def run(suites: Iterable[str] = ("all",), config: Optional[VerifyConfig] = None) -> List[CheckResult]:
    names: List[str] = []
    for s in suites:
        for n in (SUITES if s == "all" else (s,)):
            if n not in names:
                names.append(n)
    rows: List[CheckResult] = []
    for n in names:
        rows.extend(run_suite(n, config))
    return rows


def all_passed(rows: Iterable[CheckResult]) -> bool:
    return all(r.passed for r in rows)
