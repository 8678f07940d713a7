"""Command-line entry point.

Exit codes: 0 success, 2 invalid parameters, 3 no physical solution under the
requested policy, 4 verification failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import algebra, ansatz, radial, spectrum
from .emit import fmt_display, fmt_full, svg_polyline, to_csv, to_json
from .model import BranchSelection, DKPError, PhysicalParams, Regime, check

EXIT_OK, EXIT_PARAMS, EXIT_NO_PHYSICAL, EXIT_VERIFY = 0, 2, 3, 4

REGIMES = {"osc": Regime.OSCILLATOR, "arbitrary": Regime.ARBITRARY, "small": Regime.SMALL}
POLICIES = {"preset": ansatz.Policy.PAPER_PRESET, "first-principles": ansatz.Policy.FIRST_PRINCIPLES}
STATES = {"n0": 0, "n1": 1}


def _add_params(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("physical parameters (defaults: canonical table values)")
    g.add_argument("--M", type=float, default=1.0, help="boson mass")
    g.add_argument("--q", type=float, default=1.0, help="slope of U = q r")
    g.add_argument("--varpi", type=float, default=0.0, help="oscillator frequency")
    g.add_argument("--omega", type=float, default=0.01, help="frame angular velocity")
    g.add_argument("--alpha", type=float, default=0.5, help="deficit parameter in (0, 1]")
    g.add_argument("--m", type=int, default=1, help="magnetic quantum number")
    g.add_argument("--k", type=float, default=1.0, help="axial wave number")


def _params(args) -> PhysicalParams:
    return check(
        PhysicalParams(
            M=args.M, q=args.q, varpi=args.varpi, omega=args.omega,
            alpha=args.alpha, m=args.m, k=args.k,
        )
    )


def _params_record(p: PhysicalParams) -> dict:
    return {"M": p.M, "q": p.q, "varpi": p.varpi, "omega": p.omega, "alpha": p.alpha, "m": p.m, "k": p.k}


def _selection(text: str) -> BranchSelection:
    try:
        return BranchSelection.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad branch {text!r}; expected e.g. '(-,+,3/2)'") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dkpstring", description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", type=Path, help="write files here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("algebra-check", help="beta-matrix, tetrad and connection identities")
    _add_params(p)
    p.add_argument("--r", type=float, default=1.0)

    p = sub.add_parser("solve", help="all eight ansatz branches with verdicts")
    _add_params(p)
    p.add_argument("--state", choices=STATES, default="n0")
    p.add_argument("--regime", choices=REGIMES, default="small")
    p.add_argument("--policy", choices=POLICIES, default="preset")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("table", help="recompute a reference energy table")
    p.add_argument("--which", type=int, choices=(1, 2, 3), required=True)

    p = sub.add_parser("sweep", help="energies against alpha or omega*alpha")
    _add_params(p)
    p.add_argument("--var", choices=("alpha", "omega_alpha"), default="alpha")
    p.add_argument("--start", type=float, default=0.05)
    p.add_argument("--stop", type=float, default=1.0)
    p.add_argument("--points", type=int, default=20)
    p.add_argument("--omegas", default="0,0.01,0.05,0.1", help="comma-separated")
    p.add_argument("--state", choices=STATES, default="n0")
    p.add_argument("--regime", choices=REGIMES, default="small")
    p.add_argument("--branch", type=_selection, default=BranchSelection.parse("(-,+,3/2)"))

    p = sub.add_parser("wavefunction", help="radial eigenfunction samples")
    _add_params(p)
    p.add_argument("--state", choices=STATES, default="n0")
    p.add_argument("--regime", choices=REGIMES, default="small")
    p.add_argument("--branch", type=_selection, default=BranchSelection.parse("(-,+,3/2)"))
    p.add_argument("--points", type=int, default=2000)
    p.add_argument("--r-min", type=float)
    p.add_argument("--r-max", type=float)
    p.add_argument("--normalization", choices=("raw", "max1"), default="max1")
    p.add_argument("--svg", action="store_true", help="also emit an SVG polyline")

    p = sub.add_parser("verify", help="derivation-equivalence and exact-solution oracles")
    _add_params(p)
    p.add_argument("--energy", type=float, default=2.0, help="trial energy")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=10)
    return parser


def solution_record(sol, params: PhysicalParams) -> dict:
    return {
        "branch_id": sol.selection.label if sol.selection else None,
        "n": sol.n,
        "regime": sol.regime,
        "b1": sol.b1,
        "b2": sol.b2,
        "b3": sol.b3,
        "b4": sol.b4,
        "alpha11": sol.alpha11,
        "kappa2": sol.kappa2,
        "e_plus": sol.energies.e_plus if sol.energies else None,
        "e_minus": sol.energies.e_minus if sol.energies else None,
        "residuals": sol.residuals,
        "determining": list(sol.determining),
        "physical": sol.physical,
        "reasons": list(sol.reasons),
    }


def _solutions_csv(solutions, params) -> str:
    names = list(solutions[0].residuals) if solutions else []
    header = [
        "omega_alpha", "alpha", "branch_id", "b1", "b2", "b3", "b4", "alpha11",
        "kappa2", "e_plus", "e_minus", *[f"res_{n}" for n in names], "physical", "reasons",
    ]
    rows = []
    for s in solutions:
        rows.append([
            fmt_full(params.omega_alpha), fmt_full(params.alpha), s.selection.label,
            *(fmt_full(v) for v in s.b), fmt_full(s.alpha11), fmt_full(s.kappa2),
            fmt_full(s.energies.e_plus if s.energies else None),
            fmt_full(s.energies.e_minus if s.energies else None),
            *(fmt_full(s.residuals[n]) for n in names),
            "true" if s.physical else "false", ";".join(s.reasons),
        ])
    return to_csv(header, rows)


def table_csv(which: int) -> str:
    header = [
        "table", "omega_alpha", "alpha", "alpha11", "printed_alpha11", "e_plus", "e_minus",
        "printed_e_plus", "printed_e_minus", "typo_flag", "restored_e_plus", "restored_e_minus",
        "max_energy_deviation", "alpha11_full", "e_plus_full", "e_minus_full",
    ]
    rows = [
        [
            row.table, fmt_display(row.omega_alpha), fmt_display(row.alpha),
            fmt_display(row.alpha11), fmt_display(row.printed_alpha11),
            fmt_display(row.e_plus), fmt_display(row.e_minus),
            fmt_display(row.printed_e_plus), fmt_display(row.printed_e_minus),
            "true" if row.typo_flag else "false",
            fmt_display(row.restored_e_plus), fmt_display(row.restored_e_minus),
            fmt_display(row.energy_deviation), fmt_full(row.alpha11),
            fmt_full(row.e_plus), fmt_full(row.e_minus),
        ]
        for row in spectrum.reproduce_table(which)
    ]
    return to_csv(header, rows)


def verify_report(params: PhysicalParams, E: float, trials: int, seed: int) -> dict:
    reports = [radial.operator_equivalence_report(params, E, trials, seed)]
    osc = params.replace(varpi=0.3, q=0.7)
    reports.append(radial.operator_equivalence_report(osc, E, trials, seed + 1))

    exact = []
    for q in (0.5, 1.0, 2.0):
        for k in (0.0, 1.0):
            p0 = PhysicalParams(M=0.0, q=q, omega=params.omega, alpha=params.alpha, m=0, k=k)
            sol = spectrum.exact_oscillator_solution(p0)
            _, summary = spectrum.ode_residual(
                sol, p0, radial.Variant.EQ14_ON_F, np.linspace(0.01, 6.0, 600)
            )
            exact.append({"q": q, "k": k, "max_abs": summary["max_abs"], "pass": summary["max_abs"] < 1e-10})
    ok = all(r["pass"] for r in reports) and all(e["pass"] for e in exact)
    return {"equivalence": reports, "exact_solution": exact, "pass": ok}


def _emit(args, name: str, text: str) -> None:
    if args.out_dir is None:
        sys.stdout.write(text)
        return
    args.out_dir.mkdir(parents=True, exist_ok=True)
    (args.out_dir / name).write_text(text, encoding="utf-8", newline="\n")


def _wavefunction(args, params) -> None:
    regime = REGIMES[args.regime]
    n = STATES[args.state]
    solve = ansatz.solve_onenode if n == 1 else ansatz.solve_nodeless
    sol = solve(params, regime, args.branch)
    grid = spectrum.default_grid(sol, params, args.points)
    if args.r_min is not None or args.r_max is not None:
        lo = grid[0] if args.r_min is None else args.r_min
        hi = grid[-1] if args.r_max is None else args.r_max
        grid = np.linspace(lo, hi, args.points)
    sample = spectrum.eval_wavefunction(sol, params, grid, args.normalization.upper())
    rows = [[fmt_display(r), fmt_display(v), fmt_full(r), fmt_full(v)] for r, v in zip(sample.grid, sample.values)]
    _emit(args, "wavefunction.csv", to_csv(["r", "R", "r_full", "R_full"], rows))
    if args.svg:
        svg = svg_polyline(sample.grid, sample.values, title=f"{sol.selection.label} n={n}")
        if args.out_dir is None:
            sys.stdout.write(svg)
        else:
            _emit(args, "wavefunction.svg", svg)


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "table":
            _emit(args, f"table{args.which}.csv", table_csv(args.which))
            return EXIT_OK

        params = _params(args)

        if args.command == "algebra-check":
            report = algebra.algebra_report(params, args.r)
            _emit(args, "algebra-check.json", to_json({"params": _params_record(params), **report}))
            return EXIT_OK if all(report["pass"].values()) else EXIT_VERIFY

        if args.command == "solve":
            n, regime, policy = STATES[args.state], REGIMES[args.regime], POLICIES[args.policy]
            sols = ansatz.solve_branches(params, n, regime, policy)
            if args.format == "csv":
                _emit(args, "solve.csv", _solutions_csv(sols, params))
            else:
                doc = {
                    "params": _params_record(params),
                    "state": args.state,
                    "regime": regime,
                    "policy": policy,
                    "solutions": [solution_record(s, params) for s in sols],
                }
                _emit(args, "solve.json", to_json(doc))
            return EXIT_OK if any(s.physical for s in sols) else EXIT_NO_PHYSICAL

        if args.command == "sweep":
            grid = np.linspace(args.start, args.stop, args.points)
            omegas = [float(w) for w in args.omegas.split(",") if w.strip()]
            rows = spectrum.sweep_energy(
                params, args.var, grid, omegas, STATES[args.state], args.branch, REGIMES[args.regime]
            )
            body = [
                [fmt_display(r.value), fmt_display(r.omega), fmt_display(r.e_plus), fmt_display(r.e_minus),
                 fmt_full(r.e_plus), fmt_full(r.e_minus), r.error or ""]
                for r in rows
            ]
            header = [args.var, "omega", "e_plus", "e_minus", "e_plus_full", "e_minus_full", "error"]
            _emit(args, "sweep.csv", to_csv(header, body))
            return EXIT_OK

        if args.command == "wavefunction":
            _wavefunction(args, params)
            return EXIT_OK

        if args.command == "verify":
            report = verify_report(params, args.energy, args.trials, args.seed)
            _emit(args, "verify.json", to_json(report))
            if not report["pass"]:
                print("verification failed", file=sys.stderr)
                return EXIT_VERIFY
            return EXIT_OK
    except DKPError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_PHYSICAL if exc.code == "NO_PHYSICAL_BRANCH" else EXIT_PARAMS
    parser.error(f"unknown command {args.command}")
    return EXIT_PARAMS


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
