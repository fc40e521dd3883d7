"""``fdehat`` command line: solve, converge and seirs sub-commands.

Exit status: 0 success, 2 usage or configuration error, 3 numerical failure,
4 I/O failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import report
from .analysis import cross_basis_deviation, run_convergence_study
from .basis import BasisKind
from .errors import FdeHatError, NumericalError
from .models import SEIRS_LABELS, example1, example2, seirs_problem
from .plot import render_svg
from .solver import FDEProblem, solve_fde_system

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4


class _Usage(Exception):
    pass


def resolve_model(model: str, alpha=None, tau=None, params=None) -> FDEProblem:
    """Build a problem from a built-in name or a ``key = value`` config file.

    A config file may name a built-in through ``model = ...`` (default
    ``seirs``); its remaining keys are SEIRS parameters or ``alpha``/``tau``.
    """
    values = {}
    if params:
        values.update(report.read_param_file(params))
    if model not in ("example1", "example2", "seirs"):
        if not os.path.isfile(model):
            raise _Usage(f"unknown model {model!r}; built-ins are example1, example2, seirs")
        values.update(report.read_param_file(model))
        model = values.pop("model", "seirs")
        if model not in ("example1", "example2", "seirs"):
            raise _Usage(f"unknown model {model!r} in config file")
    values.pop("model", None)
    if alpha is not None:
        values["alpha"] = alpha
    if tau is not None:
        values["tau"] = tau

    if model == "seirs":
        p, s, horizon = report.seirs_from_params(values)
        return seirs_problem(p, s, horizon)
    extra = set(values) - {"alpha", "tau"}
    if extra:
        raise _Usage(f"keys {sorted(extra)} only apply to the seirs model")
    if model == "example1":
        prob = example1()
        a = values.get("alpha", prob.alpha)
        exact = prob.exact if a == prob.alpha else None
    else:
        prob = example2(values.get("alpha", 1.0))
        a, exact = prob.alpha, prob.exact
    return dataclasses.replace(prob, alpha=a, tau=values.get("tau", prob.tau), exact=exact)


def _alpha(text):
    v = float(text)
    if not 0.0 < v <= 1.0:
        raise argparse.ArgumentTypeError("alpha must lie in (0, 1]")
    return v


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fdehat",
        description="Hat-function collocation solver for Caputo fractional ODE systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, basis_help):
        p.add_argument("--basis", default="ghf", help=basis_help)
        p.add_argument("--alpha", type=_alpha, help="override the fractional order")
        p.add_argument("--tau", type=float, help="override the time horizon")
        p.add_argument("--params", help="key = value parameter file")

    p = sub.add_parser("solve", help="solve one model and write its node values")
    p.add_argument("--model", required=True, help="example1, example2, seirs or a config file")
    common(p, "ghf or mhf")
    p.add_argument("--n", type=_positive_int, required=True, help="number of subintervals")
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--svg", help="optional SVG plot path")
    p.add_argument("--samples", type=int, default=400,
                   help="sampling density for CSV and plot (default 400)")

    p = sub.add_parser("converge", help="max node errors and orders over a doubling ladder")
    p.add_argument("--model", required=True)
    common(p, "ghf or mhf")
    p.add_argument("--n", default="2:512", help="ladder 'a:b' (doubling) or comma list")
    p.add_argument("--out", help="CSV output path (default: stdout)")

    p = sub.add_parser("seirs", help="SEIRS runs for several bases and grid sizes")
    common(p, "comma list of bases (default ghf,mhf)")
    p.set_defaults(basis="ghf,mhf")
    p.add_argument("--n", default="20,40,60,80", help="comma list of grid sizes")
    p.add_argument("--out", default="seirs", help="output file prefix")
    p.add_argument("--svg", action="store_true", help="write GHF-vs-MHF overlays per state")
    p.add_argument("--strict", dest="best_effort", action="store_false",
                   help="fail (exit 3) on a block without a real root instead of "
                        "falling back to least squares")
    p.add_argument("--samples", type=int, default=400)
    return parser


def _series(sol, samples, labels=None):
    ts, vals = report.solution_rows(sol, samples)
    labels = labels or [f"y{i}" for i in range(1, sol.problem.m + 1)]
    return [(lbl, ts, vals[:, i]) for i, lbl in enumerate(labels)]


def cmd_solve(args) -> int:
    prob = resolve_model(args.model, args.alpha, args.tau, args.params)
    sol = solve_fde_system(prob, BasisKind.parse(args.basis), args.n)
    labels = list(SEIRS_LABELS) if prob.name == "seirs" else None
    text = report.solution_csv(sol, args.samples)
    report.write_text(args.out, text)
    if args.svg:
        render_svg(_series(sol, args.samples, labels), args.svg,
                   title=f"{prob.name}, {sol.grid.kind.name}, n={sol.grid.n}")
    print(f"wrote {args.out} ({sol.grid.n + 1} nodes, residual {sol.residual_norm:.2e})")
    return EXIT_OK


def cmd_converge(args) -> int:
    prob = resolve_model(args.model, args.alpha, args.tau, args.params)
    if prob.exact is None:
        raise _Usage(f"model {prob.name!r} has no exact solution for this configuration")
    ladder = report.parse_ladder(args.n)
    rows = run_convergence_study(prob, BasisKind.parse(args.basis), ladder)
    text = report.convergence_csv(rows, prob.m)
    if args.out:
        report.write_text(args.out, text)
    else:
        sys.stdout.write(text)
    for row in rows:
        if row.failed:
            print(f"n={row.n}: {row.failure}", file=sys.stderr)
    return EXIT_OK


def cmd_seirs(args) -> int:
    prob = resolve_model("seirs", args.alpha, args.tau, args.params)
    kinds = [BasisKind.parse(b) for b in args.basis.split(",") if b.strip()]
    ns = report.parse_ladder(args.n)
    pairs = [(k, n) for k in kinds for n in ns]
    with ThreadPoolExecutor(max_workers=min(len(pairs), os.cpu_count() or 1)) as pool:
        sols = dict(zip(pairs, pool.map(
            lambda kn: solve_fde_system(prob, *kn, best_effort=args.best_effort), pairs)))
    for (kind, n), sol in sols.items():
        if not sol.converged:
            print(f"fdehat: warning: {kind.name} n={n}: no real root in blocks "
                  f"{list(sol.unconverged_blocks)}; least-squares values used "
                  f"(residual {sol.residual_norm:.2e})", file=sys.stderr)
        report.write_text(f"{args.out}_{kind.value}_n{n}.csv",
                          report.solution_csv(sol, args.samples))
    if BasisKind.GHF in kinds and BasisKind.MHF in kinds:
        lines = ["n,ghf_vs_mhf,ghf_converged,mhf_converged"]
        for n in ns:
            g, m = sols[BasisKind.GHF, n], sols[BasisKind.MHF, n]
            lines.append(f"{n},{report.fmt(cross_basis_deviation(g, m))},"
                         f"{int(g.converged)},{int(m.converged)}")
        report.write_text(f"{args.out}_summary.csv", "\n".join(lines) + "\n")
    if args.svg:
        for n in ns:
            for i, label in enumerate(SEIRS_LABELS):
                series = []
                for kind in kinds:
                    ts, vals = report.solution_rows(sols[kind, n], args.samples)
                    series.append((kind.name, ts, vals[:, i]))
                render_svg(series, f"{args.out}_{label}_n{n}.svg",
                           title=f"{label}(t), alpha={prob.alpha:g}, n={n}", ylabel=label)
    print(f"wrote {len(sols)} solution tables with prefix {args.out}")
    return EXIT_OK


COMMANDS = {"solve": cmd_solve, "converge": cmd_converge, "seirs": cmd_seirs}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except NumericalError as exc:
        print(f"fdehat: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"fdehat: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (_Usage, FdeHatError, ValueError) as exc:
        print(f"fdehat: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
