"""Command-line interface: ``kappa-landau <subcommand> [options]``.

Subcommands
-----------
``spectrum``      Landau levels of one surface.
``eigenfunction`` Samples of a normalized radial eigenfunction.
``lattice``       Normalizable states for a twisted boundary class.
``morse``         Continuum threshold and bound states of the horocyclic reduction.
``contract``      Sweep ``kappa = 2 beta/n`` towards the plane.
``verify``        Run the identity suites.

Global flags (accepted before or after the subcommand): ``--format``
(``csv`` or ``json``), ``--tol`` and ``--seed-grid``.  Exit status is 0 on
success, 1 when a verification fails and 2 for invalid input.

CSV output starts with ``#`` metadata rows, then one header row, then data.
Floats carry 17 significant digits and nothing depends on the clock, so
repeated runs are byte-identical.  JSON output holds the same metadata,
columns and rows.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import __version__
from . import ladder as lad
from . import morse as mor
from . import verify as ver
from .eigenfunctions import FULL_SURFACE, RADIAL_ONLY, contraction_deviation, contraction_grid, radial_eigenfunction
from .errors import LandauError
from .representation import ModelParams, to_fraction
from .spectrum import StateLabel, admissible_levels, default_family, energy

__all__ = ["OutputRecord", "main", "build_parser", "render", "cmd_spectrum", "cmd_eigenfunction",
           "cmd_lattice", "cmd_morse", "cmd_contract", "cmd_verify"]

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2


# --- records and emitters ---------------------------------------------------------------

def _clean(value):
    """Map a value to something both emitters print identically."""
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else float(value)
    v = float(value)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if v.is_integer() and abs(v) < 2**53 and not isinstance(value, (float, np.floating)):
        return int(v)
    return 0.0 if v == 0 else v


@dataclass
class OutputRecord:
    """A table plus metadata; ``rows`` hold only str, int, float, bool or None."""

    command: str
    columns: List[str]
    rows: List[list] = field(default_factory=list)
    metadata: Dict[str, object] = field(default_factory=dict)
    ok: bool = True

    def add(self, *values) -> None:
        if len(values) != len(self.columns):
            raise ValueError(f"{self.command}: expected {len(self.columns)} values, got {len(values)}")
        self.rows.append([_clean(v) for v in values])

    @property
    def schema(self) -> str:
        return f"kappa-landau/{self.command}/v{SCHEMA_VERSION}"

    def as_dicts(self) -> List[dict]:
        return [dict(zip(self.columns, row)) for row in self.rows]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def render_csv(rec: OutputRecord) -> str:
    buf = io.StringIO()
    buf.write(f"# schema: {rec.schema}\n")
    buf.write(f"# version: {__version__}\n")
    for key, val in rec.metadata.items():
        buf.write(f"# {key}: {_fmt(_clean(val)) if not isinstance(val, str) else val}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(rec.columns)
    for row in rec.rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def render_json(rec: OutputRecord) -> str:
    meta = {k: (v if isinstance(v, str) else _clean(v)) for k, v in rec.metadata.items()}
    doc = {
        "schema": rec.schema,
        "version": __version__,
        "metadata": meta,
        "columns": rec.columns,
        "rows": rec.as_dicts(),
    }
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def render(rec: OutputRecord, fmt: str) -> str:
    return render_json(rec) if fmt == "json" else render_csv(rec)


# --- subcommands --------------------------------------------------------------------------

def _params(kappa, beta, strict: bool = True) -> ModelParams:
    return ModelParams(to_fraction(kappa), to_fraction(beta), strict=strict)


def _param_meta(p: ModelParams) -> Dict[str, object]:
    return {"kappa": str(p.kappa), "beta": str(p.beta)}


def cmd_spectrum(kappa, beta, family: Optional[str] = None, l_max: int = 5) -> OutputRecord:
    """Rows ``(l, energy, degeneracy, m_min, m_max, state_density)``."""
    p = _params(kappa, beta)
    fam = default_family(p) if family is None else family
    rec = OutputRecord("spectrum", ["l", "energy", "energy_exact", "degeneracy", "m_min", "m_max",
                                    "state_density"],
                       metadata={**_param_meta(p), "family": fam, "l_max": l_max})
    for line in admissible_levels(p, fam, l_max=l_max):
        rec.add(line.l, float(line.energy), str(line.energy), line.degeneracy, line.m_min,
                line.m_max, line.state_density)
    return rec


def cmd_eigenfunction(kappa, beta, l: int, m: int, r_min: float = 0.0, r_max: Optional[float] = None,
                      samples: int = 101, convention: str = FULL_SURFACE) -> OutputRecord:
    """Rows ``(r, R, R_squared, dR_dr)`` on an equispaced grid."""
    p = _params(kappa, beta)
    label = StateLabel(default_family(p), l, m)
    R = radial_eigenfunction(p, label, convention)
    if r_max is None:
        r_max = p.chart_radius if p.kappa > 0 else 8.0
    if samples < 1:
        raise LandauError("samples must be positive")
    r = np.linspace(r_min, r_max, samples) if samples > 1 else np.array([float(r_min)])
    vals, der = R(r), R.d1(r)
    note = ("Psi = exp(i m theta) R(r) has unit norm for the measure S(r) dr dtheta, "
            "so R_squared is the density |Psi|^2"
            if convention == FULL_SURFACE else
            "int R^2 S(r) dr = 1; divide R by sqrt(2 pi) for the surface density")
    rec = OutputRecord("eigenfunction", ["r", "R", "R_squared", "dR_dr"],
                       metadata={**_param_meta(p), "family": label.family, "l": l, "m": m,
                                 "energy": str(energy(p, None, l)), "convention": convention,
                                 "normalization": note})
    for ri, v, d in zip(r, np.atleast_1d(vals), np.atleast_1d(der)):
        rec.add(float(ri), float(v), float(v) ** 2, float(d))
    return rec


def _line_id(p: ModelParams, l: float, m: float) -> str:
    pp = p if p.beta > 0 else ModelParams(p.kappa, -p.beta)
    mm = m if p.beta > 0 else -m
    for line in lad.annihilation_lines(pp, "-"):
        if line.normalizable_condition(mm) and abs(float(line.l_of_m(mm)) - l) < 1e-9:
            return line.id
    return ""


def cmd_lattice(kappa, beta, alpha: float = 0.0, l_max: int = 2,
                window: Sequence[int] = (-6, 6)) -> OutputRecord:
    """Rows ``(m, l, energy, vacuum_flag, line_id)``; annihilation lines go to metadata."""
    p = _params(kappa, beta)
    bc = lad.BoundaryClass(float(alpha))
    meta = {**_param_meta(p), "alpha": bc.alpha, "l_max": l_max,
            "window": f"{window[0]}..{window[1]}"}
    if p.beta != 0:
        pp = p if p.beta > 0 else ModelParams(p.kappa, -p.beta)
        for which in ("-", "+"):
            for line in lad.annihilation_lines(pp, which):
                meta[f"line {line.id}"] = f"A{which} kernel on {line.description}"
    rec = OutputRecord("lattice", ["m", "l", "energy", "vacuum_flag", "line_id"], metadata=meta)
    for st in lad.normalizable_lattice(p, bc, l_max, tuple(window)):
        l0 = lad.lowest_line_level(p, st.m)
        is_vac = l0 is not None and abs(float(st.l) - l0) < 1e-9
        rec.add(st.m, st.l, energy(p, None, st.l), is_vac,
                _line_id(p, float(st.l), float(st.m)) if is_vac else "")
    return rec


def cmd_morse(kappa, beta, lambda_sep: float = 0.0) -> OutputRecord:
    """Threshold row, then one row per bound state ``(l, E, energy, E_prime, s)``."""
    p = _params(kappa, beta, strict=False)
    if p.kappa >= 0:
        raise LandauError("the horocyclic Morse reduction needs kappa < 0")
    meta = {**_param_meta(p), "lambda": float(lambda_sep),
            "energies": "E is the separated-equation eigenvalue, energy = E/2 the Landau energy"}
    try:
        meta["morse_shift_a0"] = mor.morse_shift(p, lambda_sep)
    except LandauError:
        meta["morse_shift_a0"] = "none"
    rec = OutputRecord("morse", ["kind", "l", "E", "energy", "E_prime", "s"], metadata=meta)
    thr = mor.continuum_threshold(p)
    rec.add("threshold", None, thr, thr / 2, Fraction(0), None)
    for lv in mor.morse_discrete_spectrum(p):
        rec.add("bound", lv.l, lv.E, lv.energy, lv.E_prime, lv.s)
    return rec


def _parse_n(token: str) -> Optional[int]:
    token = token.strip()
    if token.lower() in ("inf", "infinity"):
        return None
    n = int(token)
    if n <= 0:
        raise LandauError(f"n must be a positive integer or inf, got {token}")
    return n


def cmd_contract(beta, n_list: Sequence[Optional[int]], l: int = 0, m: int = 0, samples: int = 20,
                 r_max: float = 4.0, tol: float = 1e-2) -> OutputRecord:
    """Deviation of ``Psi`` at ``kappa = 2 beta/n`` from the planar state, one row per ``n``.

    ``ok`` is false when the wavefunction column increases somewhere along the
    listed (finite) ``n`` or the last finite entry exceeds ``tol``.
    """
    b = to_fraction(beta)
    grid = contraction_grid(samples, r_max)
    rec = OutputRecord("contract", ["n", "kappa", "deviation", "constant_limit", "envelope_limit",
                                    "hypergeometric_limit"],
                       metadata={"beta": str(b), "l": l, "m": m, "samples": samples,
                                 "r_max": float(r_max), "tol": float(tol),
                                 "grid": "r_j = r_max j/samples, j = 1..samples"})
    finite = []
    for n in n_list:
        d = contraction_deviation(b, n, l, m, grid)
        rec.add("inf" if n is None else n, d.kappa, d.wavefunction, d.constant, d.envelope,
                d.hypergeometric)
        if n is not None:
            finite.append(d.wavefunction)
    monotone = all(y <= x for x, y in zip(finite, finite[1:]))
    rec.ok = monotone and (not finite or finite[-1] < tol)
    rec.metadata["monotone"] = "true" if monotone else "false"
    return rec


def cmd_verify(suites: Sequence[str] = ("all",), tol: Optional[float] = None, seed: int = 0,
               functions: int = 20) -> OutputRecord:
    """Rows ``(suite, check, anchor, residual, tol, passed)``."""
    cfg = ver.VerifyConfig(tol=tol, seed=seed, functions=functions)
    rows = ver.run(suites, cfg)
    rec = OutputRecord("verify", ["suite", "check", "anchor", "residual", "tol", "exact", "passed"],
                       metadata={"suites": ",".join(suites), "seed": seed, "functions": functions,
                                 "tol_override": "none" if tol is None else float(tol)})
    for r in rows:
        rec.add(r.suite, r.name, r.anchor, r.residual, r.tol, r.exact, r.passed)
    failed = [r for r in rows if not r.passed]
    rec.ok = not failed
    rec.metadata["checks"] = len(rows)
    rec.metadata["failed"] = len(failed)
    return rec


# --- argument parsing -----------------------------------------------------------------------

def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--format", choices=("csv", "json"),
                        default=argparse.SUPPRESS if suppress else "csv",
                        help="output format (default csv)")
    parser.add_argument("--tol", type=float, default=default,
                        help="tolerance override: every non-exact verify check, "
                             "or the final deviation target of contract")
    parser.add_argument("--seed-grid", type=int, default=argparse.SUPPRESS if suppress else 0,
                        help="seed of the random test functions and sample points (default 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kappa-landau",
        description="Landau levels on surfaces of constant curvature kappa.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        sp = sub.add_parser(name, help=help_text, description=help_text)
        _global_flags(sp, suppress=True)
        return sp

    def surface(sp):
        sp.add_argument("--kappa", required=True, help="curvature (decimal or p/q)")
        sp.add_argument("--beta", required=True, help="field strength (decimal or p/q)")

    sp = add("spectrum", "Landau levels: energy, degeneracy, m range, state density")
    surface(sp)
    sp.add_argument("--family", choices=("lowest", "highest"), default=None)
    sp.add_argument("--l-max", type=int, default=5)

    sp = add("eigenfunction", "samples of a normalized radial eigenfunction")
    surface(sp)
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--r-min", type=float, default=0.0)
    sp.add_argument("--r-max", type=float, default=None,
                    help="default: the antipode on the sphere, 8 otherwise")
    sp.add_argument("--samples", type=int, default=101)
    sp.add_argument("--convention", choices=(FULL_SURFACE, RADIAL_ONLY), default=FULL_SURFACE)

    sp = add("lattice", "normalizable states for the boundary class alpha")
    surface(sp)
    sp.add_argument("--alpha", type=float, default=0.0)
    sp.add_argument("--l-max", type=int, default=2)
    sp.add_argument("--m-min", type=int, default=-6)
    sp.add_argument("--m-max", type=int, default=6)

    sp = add("morse", "continuum threshold and bound states of the Morse reduction (kappa < 0)")
    surface(sp)
    sp.add_argument("--lambda", dest="lambda_sep", type=float, default=0.0,
                    help="separation constant")

    sp = add("contract", "deviation from the planar eigenfunction along kappa = 2 beta/n")
    sp.add_argument("--beta", default="2")
    sp.add_argument("--n", default="8,16,32,64,128,256,512,1024",
                    help="comma-separated n values; 'inf' gives the plane itself")
    sp.add_argument("--l", type=int, default=0)
    sp.add_argument("--m", type=int, default=0)
    sp.add_argument("--samples", type=int, default=20)
    sp.add_argument("--r-max", type=float, default=4.0)

    sp = add("verify", "run the identity suites")
    sp.add_argument("--suite", action="append", choices=("all",) + ver.SUITES,
                    help="suite to run (repeatable; default all)")
    sp.add_argument("--functions", type=int, default=20,
                    help="random test functions per curvature in the oracle suites")
    return parser


def _dispatch(args) -> OutputRecord:
    if args.command == "spectrum":
        return cmd_spectrum(args.kappa, args.beta, args.family, args.l_max)
    if args.command == "eigenfunction":
        return cmd_eigenfunction(args.kappa, args.beta, args.l, args.m, args.r_min, args.r_max,
                                 args.samples, args.convention)
    if args.command == "lattice":
        return cmd_lattice(args.kappa, args.beta, args.alpha, args.l_max, (args.m_min, args.m_max))
    if args.command == "morse":
        return cmd_morse(args.kappa, args.beta, args.lambda_sep)
    if args.command == "contract":
        try:
            ns = [_parse_n(t) for t in args.n.split(",") if t.strip()]
        except ValueError as exc:
            raise LandauError(f"bad --n list {args.n!r}: {exc}") from exc
        tol = 1e-2 if args.tol is None else args.tol
        return cmd_contract(args.beta, ns, args.l, args.m, args.samples, args.r_max, tol)
    if args.command == "verify":
        return cmd_verify(args.suite or ["all"], args.tol, args.seed_grid, args.functions)
    raise LandauError(f"unknown command {args.command}")  # pragma: no cover


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rec = _dispatch(args)
    except (LandauError, ValueError, ArithmeticError) as exc:
        print(f"kappa-landau {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(render(rec, args.format))
    if not rec.ok:
        print(f"kappa-landau {args.command}: verification failed", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
