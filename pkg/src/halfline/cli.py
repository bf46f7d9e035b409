"""Command-line interface: spectra, eigenfunction tables, b sweeps, verification.

All commands are deterministic: identical flags produce byte-identical
output files.  Run metadata lives in '#' comment headers; the data body
contains no timestamps.  Exit codes: 0 success, 1 computational failure or
tolerance breach, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from .analytic import AnalyticEigenstate, free_eigenfunction, ho_energy
from .eigensolve import build_hamiltonian, solve_spectrum, sweep_b
from .model import (
    HalfLineGrid,
    PhysicalParams,
    SpikedPotential,
    free_particle_potential,
    half_oscillator_potential,
    shifted_oscillator_potential,
)
from .specfun import KummerParams, bessel_j1_zero, build_quadrature, kummer_1f1
from .verify import (
    closure_check,
    commutator_report,
    gaussian_bump,
    orthonormality_matrix,
    residual_report,
)

__all__ = ["RunConfig", "main", "run"]

MODELS = ("free", "half-ho", "shifted")
VERIFY_CHECKS = ("lemma", "closure", "commutator", "residuals", "all")


@dataclass(frozen=True)
class RunConfig:
    """Flags shared by every subcommand; defaults match the reference runs."""

    model: str = "half-ho"
    b: float = 0.0
    hbar: float = 1.0
    mass: float = 1.0
    omega: float = 1.0
    xmax: float = 12.0
    npoints: int = 8000
    count: int = 8
    tol: float = 1e-3
    output: str = "csv"
    dimensionless: bool = False

    def header_items(self):
        return list(asdict(self).items())


def _config_from(args) -> RunConfig:
    return RunConfig(
        model=args.model,
        b=args.b,
        hbar=args.hbar,
        mass=args.mass,
        omega=args.omega,
        xmax=args.xmax,
        npoints=args.npoints,
        count=args.count,
        tol=args.tol,
        output=args.output,
        dimensionless=args.dimensionless,
    )


def _params(cfg: RunConfig) -> PhysicalParams:
    return PhysicalParams(mass=cfg.mass, omega=cfg.omega, hbar=cfg.hbar)


def _model_setup(cfg: RunConfig, params: PhysicalParams):
    """Potential plus solver grid for the configured model.

    The solver grid lives in the translated coordinate u = x + b and spans
    (0, b + xmax), keeping the singular point at the grid origin.
    """
    if cfg.model == "free":
        pot = free_particle_potential()
    elif cfg.model == "half-ho":
        pot = half_oscillator_potential(params)
    elif cfg.model == "shifted":
        pot = shifted_oscillator_potential(params, cfg.b)
    else:
        raise ValueError(f"unknown model {cfg.model!r}")
    grid = HalfLineGrid(xmax=pot.b + cfg.xmax, npoints=cfg.npoints)
    return pot, grid


# ---------------------------------------------------------------------------
# output formatting
# ---------------------------------------------------------------------------


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _header_lines(cfg: RunConfig, command: str) -> list[str]:
    lines = [f"# halfline {__version__}", f"# command: {command}"]
    for key, val in cfg.header_items():
        lines.append(f"# {key}: {_fmt(val)}")
    units = "dimensionless (eps = 2 m E / hbar^2)" if cfg.dimensionless else "physical"
    lines.append(f"# energy-units: {units}")
    return lines


def _emit(cfg: RunConfig, command: str, columns: list[str], rows: list[list], out: str | None):
    if cfg.output == "json":
        payload = {
            "tool": f"halfline {__version__}",
            "command": command,
            "config": {k: v for k, v in cfg.header_items()},
            "columns": columns,
            "rows": [[v for v in row] for row in rows],
        }
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        lines = _header_lines(cfg, command)
        lines.append(",".join(columns))
        for row in rows:
            lines.append(",".join(_fmt(v) for v in row))
        text = "\n".join(lines) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------


def _analytic_energies(cfg: RunConfig, params: PhysicalParams) -> list[float | None]:
    if cfg.model == "half-ho" or (cfg.model == "shifted" and cfg.b == 0.0):
        return [ho_energy(n, params) for n in range(cfg.count)]
    if cfg.model == "free":
        # Dirichlet truncation quantizes k at the J1 zeros over xmax.
        scale = params.hbar**2 / (2.0 * params.mass)
        return [scale * (bessel_j1_zero(j + 1) / cfg.xmax) ** 2 for j in range(cfg.count)]
    return [None] * cfg.count


def cmd_spectrum(args) -> int:
    cfg = _config_from(args)
    params = _params(cfg)
    pot, grid = _model_setup(cfg, params)
    result = solve_spectrum(build_hamiltonian(pot, grid), cfg.count)
    energies = params.energy_from_dimensionless(result.eigenvalues)
    references = _analytic_energies(cfg, params)

    if cfg.dimensionless:
        energies = result.eigenvalues
        references = [
            None if r is None else params.dimensionless_from_energy(r) for r in references
        ]

    rows = []
    breached = False
    for n in range(cfg.count):
        e_num = float(energies[n])
        e_ana = references[n]
        if e_ana is None:
            rows.append([n, e_num, None, None, None])
            continue
        abs_err = abs(e_num - e_ana)
        rel_err = abs_err / abs(e_ana)
        rows.append([n, e_num, float(e_ana), abs_err, rel_err])
        if rel_err > cfg.tol:
            breached = True
    _emit(cfg, "spectrum", ["n", "E_numeric", "E_analytic", "abs_err", "rel_err"], rows, args.out)
    if breached:
        print(f"spectrum: relative error exceeded tol={cfg.tol:g}", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------------------
# eigenfunc
# ---------------------------------------------------------------------------


def _analytic_state_values(cfg: RunConfig, params: PhysicalParams, n: int, u: np.ndarray):
    if cfg.model == "half-ho" or (cfg.model == "shifted" and cfg.b == 0.0):
        return AnalyticEigenstate.build(n, "first-condition", params).evaluate(u)
    if cfg.model == "free":
        k = bessel_j1_zero(n + 1) / cfg.xmax
        rule = build_quadrature("gauss-legendre", 256, (0.0, cfg.xmax))
        norm = math.sqrt(rule.integrate(lambda t: free_eigenfunction(k, t) ** 2))
        return free_eigenfunction(k, u) / norm
    return None


def cmd_eigenfunc(args) -> int:
    cfg = _config_from(args)
    if args.n < 0 or args.n >= cfg.count:
        print(f"error: --n must be in [0, count={cfg.count})", file=sys.stderr)
        return 2
    if args.samples < 2:
        print("error: --samples must be >= 2", file=sys.stderr)
        return 2
    params = _params(cfg)
    pot, grid = _model_setup(cfg, params)
    result = solve_spectrum(build_hamiltonian(pot, grid), cfg.count, want_vectors=True)
    numeric = result.eigenvectors[args.n].values
    u = grid.nodes
    analytic = _analytic_state_values(cfg, params, args.n, u)

    idx = np.unique(np.round(np.linspace(0, grid.npoints - 1, args.samples)).astype(int))
    rows = []
    for i in idx:
        x_phys = u[i] - pot.b
        if analytic is None:
            rows.append([float(x_phys), None, float(numeric[i]), None])
        else:
            rows.append(
                [
                    float(x_phys),
                    float(analytic[i]),
                    float(numeric[i]),
                    float(analytic[i] - numeric[i]),
                ]
            )
    _emit(cfg, "eigenfunc", ["x", "phi_analytic", "phi_numeric", "diff"], rows, args.out)
    return 0


# ---------------------------------------------------------------------------
# sweep-b
# ---------------------------------------------------------------------------


def cmd_sweep_b(args) -> int:
    cfg = _config_from(args)
    if not (0.0 <= args.bfrom < args.bto) or args.steps < 2:
        print("error: sweep-b requires 0 <= bfrom < bto and steps >= 2", file=sys.stderr)
        return 2
    params = _params(cfg)
    bvalues = np.linspace(args.bfrom, args.bto, args.steps)
    table = sweep_b(bvalues, cfg.count, params, xmax=cfg.xmax, npoints=cfg.npoints)

    def to_units(eps):
        return eps if cfg.dimensionless else params.energy_from_dimensionless(eps)

    columns = ["kind", "b"] + [f"E_{i}" for i in range(cfg.count)]
    rows = []
    for b, eps in table:
        rows.append(["sweep", float(b)] + [float(v) for v in to_units(eps)])
    ref_b0 = np.array([ho_energy(n, params) for n in range(cfg.count)])
    ref_inf = np.array([(n + 0.5) * params.quantum for n in range(cfg.count)])
    if cfg.dimensionless:
        ref_b0 = params.dimensionless_from_energy(ref_b0)
        ref_inf = params.dimensionless_from_energy(ref_inf)
    rows.append(["ref-b0", 0.0] + [float(v) for v in ref_b0])
    rows.append(["ref-b-infinity", None] + [float(v) for v in ref_inf])
    _emit(cfg, "sweep-b", columns, rows, args.out)
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _check_lemma(params: PhysicalParams) -> list[dict]:
    rule = build_quadrature("gauss-legendre", 128, (0.0, 12.0))
    x = rule.nodes
    y = x**2
    polys = [kummer_1f1(KummerParams(a=-float(n), c=2.0), y) for n in range(11)]
    weight = x**3 * np.exp(-y)
    from .analytic import landau_integral

    worst = 0.0
    for n in range(11):
        for m in range(11):
            quad = float(np.dot(rule.weights, weight * polys[n] * polys[m]))
            closed = landau_integral(n, m, 2.0, 1.0)
            worst = max(worst, abs(quad - closed))
    checks = [
        {
            "name": "lemma-closed-form-vs-quadrature",
            "observed": worst,
            "threshold": 1e-10,
            "passed": worst < 1e-10,
        }
    ]
    gram = orthonormality_matrix(10, params)
    dev = float(np.abs(gram - np.eye(11)).max())
    checks.append(
        {
            "name": "orthonormality-gram",
            "observed": dev,
            "threshold": 1e-8,
            "passed": dev < 1e-8,
        }
    )
    return checks


def _check_closure() -> list[dict]:
    report = closure_check(gaussian_bump(), [10.0, 20.0, 40.0])
    errs = [e for _, e in report.error_curve]
    ratio = errs[0] / errs[-1] if errs[-1] > 0.0 else math.inf
    noise_floor = 1e-10
    monotone = all(
        b <= a * 1.001 or (a < noise_floor and b < noise_floor)
        for a, b in zip(errs, errs[1:])
    )
    return [
        {
            "name": "closure-error-drop-10-to-40",
            "observed": ratio,
            "threshold": 10.0,
            "passed": ratio >= 10.0 and monotone,
            "curve": [[k, e] for k, e in report.error_curve],
        }
    ]


def _check_commutator(params: PhysicalParams) -> list[dict]:
    entries, orders = commutator_report([1000, 2000, 4000], params=params)
    ok = all(1.7 <= o <= 2.3 for o in orders)
    return [
        {
            "name": "commutator-order",
            "observed": min(orders),
            "threshold": 2.0,
            "passed": ok,
            "residuals": [[n, r] for n, r in entries],
            "orders": orders,
        }
    ]


def _check_residuals(params: PhysicalParams) -> list[dict]:
    pot = half_oscillator_potential(params)
    grid = HalfLineGrid(12.0, 2000)
    states = [AnalyticEigenstate.build(n, "first-condition", params) for n in range(4)]
    analytic = residual_report(pot, states, grid, params)
    ok_orders = all(1.6 <= entry.order <= 2.4 for entry in analytic)
    numeric = solve_spectrum(build_hamiltonian(pot, grid), 4, want_vectors=True)
    matrix = residual_report(pot, numeric, grid, params)
    worst = max(entry.residual for entry in matrix)
    return [
        {
            "name": "analytic-residual-order",
            "observed": min(entry.order for entry in analytic),
            "threshold": 2.0,
            "passed": ok_orders,
        },
        {
            "name": "numeric-matrix-residual",
            "observed": worst,
            "threshold": 1e-8,
            "passed": worst < 1e-8,
        },
    ]


def cmd_verify(args) -> int:
    cfg = _config_from(args)
    params = _params(cfg)
    which = args.which
    checks: list[dict] = []
    if which in ("lemma", "all"):
        checks += _check_lemma(params)
    if which in ("closure", "all"):
        checks += _check_closure()
    if which in ("commutator", "all"):
        checks += _check_commutator(params)
    if which in ("residuals", "all"):
        checks += _check_residuals(params)

    all_passed = all(c["passed"] for c in checks)
    for c in checks:
        status = "PASS" if c["passed"] else "FAIL"
        print(f"{status} {c['name']}: observed {c['observed']:.6g} (threshold {c['threshold']:g})")
    if args.out is not None:
        payload = {
            "tool": f"halfline {__version__}",
            "command": f"verify {which}",
            "config": {k: v for k, v in cfg.header_items()},
            "checks": checks,
            "passed": all_passed,
        }
        with open(args.out, "w") as fh:
            fh.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return 0 if all_passed else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_common(sub: argparse.ArgumentParser):
    sub.add_argument("--model", choices=MODELS, default="half-ho")
    sub.add_argument("--b", type=float, default=0.0, help="endpoint shift (shifted model)")
    sub.add_argument("--hbar", type=float, default=1.0)
    sub.add_argument("--mass", type=float, default=1.0)
    sub.add_argument("--omega", type=float, default=1.0)
    sub.add_argument("--xmax", type=float, default=12.0)
    sub.add_argument("--npoints", type=int, default=8000)
    sub.add_argument("--count", type=int, default=8)
    sub.add_argument("--tol", type=float, default=1e-3)
    sub.add_argument("--output", choices=("csv", "json"), default="csv")
    sub.add_argument("--out", default=None, help="output file (default stdout)")
    sub.add_argument("--dimensionless", action="store_true")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="halfline",
        description="Spectra and eigenfunctions of half-line quantum models",
    )
    subs = parser.add_subparsers(dest="subcommand", required=True)

    p = subs.add_parser("spectrum", help="numeric spectrum vs analytic references")
    _add_common(p)
    p.set_defaults(func=cmd_spectrum)

    p = subs.add_parser("eigenfunc", help="sampled eigenfunction table")
    _add_common(p)
    p.add_argument("--n", type=int, required=True, help="state index")
    p.add_argument("--samples", type=int, default=200)
    p.set_defaults(func=cmd_eigenfunc)

    p = subs.add_parser("sweep-b", help="spectrum along the endpoint shift b")
    _add_common(p)
    p.add_argument("--bfrom", type=float, default=0.0)
    p.add_argument("--bto", type=float, default=10.0)
    p.add_argument("--steps", type=int, default=6)
    p.set_defaults(func=cmd_sweep_b)

    p = subs.add_parser("verify", help="run the cross-check suite")
    _add_common(p)
    p.add_argument("which", nargs="?", choices=VERIFY_CHECKS, default="all")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.model != "shifted" and args.b != 0.0:
        print("error: --b is only meaningful with --model shifted", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (ValueError, RuntimeError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run():
    raise SystemExit(main())
