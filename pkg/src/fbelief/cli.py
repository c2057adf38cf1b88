"""Command-line interface.

Exit codes: 0 success, 1 validation errors, 2 I/O errors. Errors go to
stderr; nothing is printed to stdout on failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .combine import dempster_combine, disjunctive_combine
from .core import MassAssignment, parse_bpa
from .errors import EvidenceError
from .experiments import EXPERIMENT_NAMES, ExperimentSpec, run_experiment
from .measures import MEASURE_IDS, measure
from .transforms import betp, iterate_split, negation_step, pnpl, write_trace_csv


def _load_bpa(path: str) -> MassAssignment:
    return parse_bpa(Path(path).read_text())


def _print_masses(bpa: MassAssignment) -> None:
    for name, value in bpa.by_label().items():
        print(f"{name}:{value:.6f}")


def _cmd_entropy(args: argparse.Namespace) -> int:
    bpa = _load_bpa(args.input)
    value = measure(args.measure, bpa, args.base)
    if args.json:
        print(json.dumps({"measure": args.measure, "base": args.base, "value": value}))
    else:
        print(f"{value:.6f}")
    return 0


def _cmd_transform(args: argparse.Namespace) -> int:
    bpa = _load_bpa(args.input)
    dist = betp(bpa) if args.method == "betp" else pnpl(bpa)
    if args.json:
        print(json.dumps({"method": args.method, "probs": dist.by_label()}))
    else:
        print(" ".join(f"{label}:{p:.6f}" for label, p in dist.by_label().items()))
    return 0


def _cmd_combine(args: argparse.Namespace) -> int:
    first = _load_bpa(args.first)
    second = _load_bpa(args.second)
    if args.rule == "dempster":
        combined, conflict = dempster_combine(first, second)
    else:
        combined, conflict = disjunctive_combine(first, second), None
    if args.json:
        payload: dict[str, object] = {"rule": args.rule, "masses": combined.by_label()}
        if conflict is not None:
            payload["conflict"] = conflict
        print(json.dumps(payload))
    else:
        _print_masses(combined)
        if conflict is not None:
            print(f"conflict:{conflict:.6f}")
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    bpa = _load_bpa(args.input)
    trace = iterate_split(bpa, args.kernel, p=args.p, max_steps=args.steps, tol=args.tol)
    with Path(args.trace).open("w", newline="") as fh:
        write_trace_csv(trace, fh)
    if args.json:
        print(
            json.dumps(
                {
                    "kernel": args.kernel,
                    "steps": len(trace.steps) - 1,
                    "converged": trace.converged,
                    "final": trace.final.by_label(),
                    "trace": args.trace,
                }
            )
        )
    else:
        _print_masses(trace.final)
        print(f"converged:{str(trace.converged).lower()} steps:{len(trace.steps) - 1}")
    return 0


def _cmd_negate(args: argparse.Namespace) -> int:
    bpa = _load_bpa(args.input)
    for _ in range(args.steps):
        bpa = negation_step(bpa)
    if args.json:
        print(json.dumps({"steps": args.steps, "masses": bpa.by_label()}))
    else:
        _print_masses(bpa)
    return 0


def _cmd_experiment(args: argparse.Namespace) -> int:
    params: dict[str, object] = {}
    for item in args.param:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise EvidenceError(f"--param expects k=v, got {item!r}")
        params[key] = value
    spec = ExperimentSpec(args.name, params, Path(args.out))
    files = run_experiment(spec, render=not args.no_plots)
    if args.json:
        summary = json.loads((Path(args.out) / "summary.json").read_text())
        print(json.dumps({"experiment": args.name, "files": [str(f) for f in files], "summary": summary}))
    else:
        for path in files:
            print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fbelief",
        description="Mass-function transforms, combination rules, uncertainty measures, "
        "and reproducible experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    entropy = sub.add_parser("entropy", help="evaluate an uncertainty measure on a BPA file")
    entropy.add_argument("--measure", required=True, choices=MEASURE_IDS)
    entropy.add_argument("--base", type=float, default=2.0)
    entropy.add_argument("--input", required=True)
    entropy.add_argument("--json", action="store_true")
    entropy.set_defaults(handler=_cmd_entropy)

    transform = sub.add_parser("transform", help="turn a BPA into a probability distribution")
    transform.add_argument("--method", required=True, choices=("betp", "pnpl"))
    transform.add_argument("--input", required=True)
    transform.add_argument("--json", action="store_true")
    transform.set_defaults(handler=_cmd_transform)

    combine = sub.add_parser("combine", help="combine two BPA files")
    combine.add_argument("--rule", required=True, choices=("dempster", "disjunctive"))
    combine.add_argument("first")
    combine.add_argument("second")
    combine.add_argument("--json", action="store_true")
    combine.set_defaults(handler=_cmd_combine)

    simulate = sub.add_parser("simulate", help="iterate a splitting kernel, writing a trace CSV")
    simulate.add_argument("--kernel", required=True, choices=("uniform", "param3"))
    simulate.add_argument("--p", type=float, default=None)
    simulate.add_argument("--steps", type=int, default=10_000)
    simulate.add_argument("--tol", type=float, default=1e-9)
    simulate.add_argument("--input", required=True)
    simulate.add_argument("--trace", required=True)
    simulate.add_argument("--json", action="store_true")
    simulate.set_defaults(handler=_cmd_simulate)

    negate = sub.add_parser("negate", help="apply negation steps to a BPA file")
    negate.add_argument("--steps", type=int, default=1)
    negate.add_argument("--input", required=True)
    negate.add_argument("--json", action="store_true")
    negate.set_defaults(handler=_cmd_negate)

    experiment = sub.add_parser("experiment", help="run a named experiment")
    experiment.add_argument("name", choices=EXPERIMENT_NAMES)
    experiment.add_argument("--out", default=".")
    experiment.add_argument("--param", action="append", default=[], metavar="K=V")
    experiment.add_argument("--no-plots", action="store_true")
    experiment.add_argument("--json", action="store_true")
    experiment.set_defaults(handler=_cmd_experiment)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        return args.handler(args)
    except EvidenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
