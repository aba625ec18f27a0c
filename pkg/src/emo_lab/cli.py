"""Command-line interface: single runs, sweeps, self-checks, front listing.

Exit codes: 0 on success/completion, 1 on runtime or suite failure, 2 on
usage errors.  All numeric output is locale independent.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .algorithms import AlgorithmConfig, run
from .harness import (
    ExperimentPlan,
    fit_scaling,
    parse_algo,
    parse_plan,
    parse_refpoints,
    run_experiment,
    save_scaling_plot,
)
from .problems import evaluate_otzt, parse_problem
from .core import bitstring
from .verify import SUITES, run_suite

__all__ = ["build_parser", "entry", "main"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="emo-lab",
        description="Evolutionary multi-objective algorithms on trap-style bitstring benchmarks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a single seeded run")
    p_run.add_argument("--algo", required=True, choices=["semo", "gsemo", "nsga2", "nsga3", "smsemoa"])
    p_run.add_argument("--n", type=int, required=True, help="bitstring length")
    p_run.add_argument("--mu", type=int, default=4, help="population size (ignored by semo/gsemo)")
    p_run.add_argument("--mutation", choices=["bitwise", "local"], default=None,
                       help="default: bitwise (semo always uses local)")
    p_run.add_argument("--dedup", choices=["on", "off"], default="on")
    p_run.add_argument("--budget", type=int, default=10_000_000, help="evaluation budget")
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--mask", default=None, help="hex mask applied by XOR before evaluation")
    p_run.add_argument("--init-excludes-front", action="store_true",
                       help="resample initial members until none is Pareto-optimal")
    p_run.add_argument("--refpoints", default=None,
                       help="nsga3 reference points: units or das-dennis:p=<P>")
    p_run.add_argument("--eps-nadir", type=float, default=1e-6)
    p_run.add_argument("--hv-ref", default=None, metavar="F1,F2",
                       help="smsemoa hypervolume reference point (use --hv-ref=-a,-b for negatives)")
    p_run.add_argument("--trace", default=None, help="write the per-generation trace CSV here")

    p_sweep = sub.add_parser("sweep", help="execute an experiment grid and write a CSV")
    p_sweep.add_argument("--plan", default=None, help="plan file (key = value lines)")
    p_sweep.add_argument("--algo", action="append", default=None, metavar="DESCRIPTOR",
                         help="algorithm descriptor, e.g. nsga2,mu=4,dedup=on (repeatable)")
    p_sweep.add_argument("--ns", default=None, help="comma-separated problem sizes")
    p_sweep.add_argument("--runs", type=int, default=None)
    p_sweep.add_argument("--budget", type=int, default=None)
    p_sweep.add_argument("--seed", type=int, default=0)
    p_sweep.add_argument("--problem", default="otzt")
    p_sweep.add_argument("--out", default=None, help="CSV output path")
    p_sweep.add_argument("--plot", default=None, help="SVG scaling plot path")
    p_sweep.add_argument("--workers", type=int, default=None)

    p_verify = sub.add_parser("verify", help="run the oracle and property suites")
    p_verify.add_argument("--suite", choices=["all"] + sorted(SUITES), default="all")
    p_verify.add_argument("--samples", type=int, default=None, help="randomized instance count")
    p_verify.add_argument("--n", type=int, default=None, help="problem size override")

    p_front = sub.add_parser("front", help="print the Pareto front and the interior diagonal")
    p_front.add_argument("--n", type=int, required=True)
    p_front.add_argument("--mask", default=None, help="hex mask (rows describe x XOR mask classes)")

    return parser


def _cmd_run(args) -> int:
    try:
        cfg = AlgorithmConfig(
            kind=args.algo,
            mu=args.mu,
            mutation=args.mutation,
            dedup=args.dedup == "on",
            refpoints=parse_refpoints(args.refpoints) if args.refpoints else None,
            hv_ref=_parse_hv_ref(args.hv_ref) if args.hv_ref else None,
            init_excludes_front=args.init_excludes_front,
            eps_nadir=args.eps_nadir,
        )
        descriptor = f"otzt:n={args.n}" + (f":mask={args.mask}" if args.mask else "")
        inst = parse_problem(descriptor)
        if args.budget < 1:
            raise ValueError("budget must be positive")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    res = run(inst, cfg, args.budget, np.random.default_rng(args.seed))
    print(
        f"algo={args.algo} n={args.n} mu={cfg.mu} mutation={cfg.mutation.value} "
        f"dedup={'on' if cfg.dedup else 'off'} seed={args.seed} budget={args.budget} "
        f"success={'true' if res.success else 'false'} evaluations={res.evaluations} "
        f"generations={res.generations} violations={res.monotone_violations}"
    )
    if args.trace:
        try:
            res.trace.write_csv(args.trace)
        except OSError as exc:
            print(f"error: cannot write trace to {args.trace}: {exc}", file=sys.stderr)
            return 1
    return 0


def _parse_hv_ref(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected --hv-ref F1,F2, got {text!r}")
    return (float(parts[0]), float(parts[1]))


def _cmd_sweep(args) -> int:
    try:
        if args.plan:
            plan = parse_plan(args.plan)
            if args.out:
                plan.output = args.out
        else:
            missing = [
                flag
                for flag, value in (("--algo", args.algo), ("--ns", args.ns),
                                    ("--runs", args.runs), ("--budget", args.budget))
                if not value
            ]
            if missing:
                raise ValueError(f"sweep needs --plan or inline flags; missing {', '.join(missing)}")
            plan = ExperimentPlan(
                algorithms=[parse_algo(a) for a in args.algo],
                ns=[int(v) for v in args.ns.split(",")],
                runs=args.runs,
                budget=args.budget,
                master_seed=args.seed,
                problem=args.problem,
                output=args.out,
            )
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2 if isinstance(exc, ValueError) else 1
    try:
        outcome = run_experiment(plan, workers=args.workers)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"{'algo':<14} {'n':>5} {'runs':>5} {'success':>8} {'mean':>12} {'median':>12} {'stddev':>12}")
    for s in outcome.summaries:
        mean = f"{s.mean:.1f}" if s.mean is not None else "-"
        median = f"{s.median:.1f}" if s.median is not None else "-"
        stddev = f"{s.stddev:.1f}" if s.stddev is not None else "-"
        print(f"{s.label:<14} {s.n:>5} {s.runs:>5} {s.success_rate:>8.2f} {mean:>12} {median:>12} {stddev:>12}")
    if plan.output:
        print(f"wrote {plan.output}")
    if args.plot:
        labels = {label for label, _ in plan.algorithms}
        if len(labels) != 1:
            print("error: --plot needs a single-algorithm sweep", file=sys.stderr)
            return 2
        means = [s.mean for s in outcome.summaries]
        if any(m is None for m in means):
            print("error: cannot plot, some cells never covered the front", file=sys.stderr)
            return 1
        fit = fit_scaling(plan.ns, means) if len(plan.ns) >= 3 else None
        try:
            save_scaling_plot(args.plot, plan.ns, means, fit)
        except OSError as exc:
            print(f"error: cannot write plot to {args.plot}: {exc}", file=sys.stderr)
            return 1
        print(f"wrote {args.plot}")
    return 0


def _cmd_verify(args) -> int:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    failed = False
    for name in names:
        report = run_suite(name, samples=args.samples, n=args.n)
        status = "pass" if report.passed else "FAIL"
        print(f"{name}: {status} ({report.checks} checks)")
        if not report.passed:
            print(f"  counterexample: {report.failure}")
            failed = True
    return 1 if failed else 0


def _cmd_front(args) -> int:
    try:
        descriptor = f"otzt:n={args.n}" + (f":mask={args.mask}" if args.mask else "")
        inst = parse_problem(descriptor)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    n = inst.n
    print("kind,unitation,f1,f2")
    for m in range(n + 1):
        bits = bitstring(np.concatenate([np.ones(m, dtype=np.uint8), np.zeros(n - m, dtype=np.uint8)]) ^ inst.mask)
        f1, f2 = evaluate_otzt(inst, bits)
        kind = "front" if m in (0, n) else "interior"
        print(f"{kind},{m},{f1},{f2}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "sweep":
        return _cmd_sweep(args)
    if args.command == "verify":
        return _cmd_verify(args)
    if args.command == "front":
        return _cmd_front(args)
    raise AssertionError("unreachable")


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
