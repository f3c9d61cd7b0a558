"""Command-line entry point: ``pbsched {gen,solve,exact,validate,bench}``.

Exit codes: 0 success, 1 invalid schedule, 2 usage or parse error,
3 exact-oracle limit exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .bench import ALGORITHMS, PRESETS, GenSpec, generate_instance, rows_to_csv, run_experiment
from .exact import OracleLimitExceeded, SearchLimits, optimal_makespan
from .formats import FormatError, emit_instance, emit_schedule, parse_instance, parse_schedule
from .model import lower_bound, makespan, validate_schedule

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


def _uint64(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _read_instance(path: str):
    return parse_instance(Path(path).read_text())


def cmd_gen(args) -> int:
    spec = GenSpec(args.n, args.m, args.wmax, args.density, args.d, args.seed)
    Path(args.output).write_text(emit_instance(generate_instance(spec)))
    return EXIT_OK


def cmd_solve(args) -> int:
    instance = _read_instance(args.input)
    schedule = ALGORITHMS[args.alg](instance)
    if args.out:
        Path(args.out).write_text(emit_schedule(schedule))
    print(f"makespan {makespan(schedule, instance.d)}")
    print(f"lower_bound {lower_bound(instance)}")
    return EXIT_OK


def cmd_exact(args) -> int:
    instance = _read_instance(args.input)
    defaults = SearchLimits()
    limits = SearchLimits(
        max_edges=args.max_edges or defaults.max_edges,
        max_total_weight=args.max_total_weight or defaults.max_total_weight,
        max_nodes_per_side=args.max_nodes or defaults.max_nodes_per_side,
        node_budget=args.node_budget or defaults.node_budget,
    )
    try:
        best, schedule = optimal_makespan(instance, limits)
    except OracleLimitExceeded as exc:
        print(f"oracle limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    if args.out:
        Path(args.out).write_text(emit_schedule(schedule))
    print(f"makespan {best}")
    print(f"lower_bound {lower_bound(instance)}")
    return EXIT_OK


def cmd_validate(args) -> int:
    instance = _read_instance(args.input)
    schedule = parse_schedule(Path(args.sched).read_text())
    report = validate_schedule(instance, schedule)
    print(report)
    if report.ok:
        print(f"makespan {makespan(schedule, instance.d)}")
        return EXIT_OK
    return EXIT_INVALID


def cmd_bench(args) -> int:
    preset = dict(PRESETS["paper" if args.paper else "quick"])
    for key, attr in (("n", "n"), ("m", "m"), ("w_max", "wmax"), ("density", "density"),
                      ("d_list", "d_list"), ("cases", "cases")):
        value = getattr(args, attr)
        if value is not None:
            preset[key] = value
    template = GenSpec(preset["n"], preset["m"], preset["w_max"], preset["density"], d=1)
    algorithms = args.algs.split(",") if args.algs else list(ALGORITHMS)
    rows = run_experiment(
        algorithms, preset["d_list"], preset["cases"], template, args.seed, workers=args.workers
    )
    text = rows_to_csv(rows)
    Path(args.csv).write_text(text)
    if not args.quiet:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pbsched", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random instance file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--wmax", type=int, required=True)
    p.add_argument("--density", type=float, default=1.0)
    p.add_argument("--seed", type=_uint64, required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="schedule an instance with one heuristic")
    p.add_argument("--alg", choices=sorted(ALGORITHMS), required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("exact", help="optimal makespan of a tiny instance")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--max-edges", type=int)
    p.add_argument("--max-total-weight", type=int)
    p.add_argument("--max-nodes", type=int)
    p.add_argument("--node-budget", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("validate", help="check a schedule against an instance")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--sched", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("bench", help="approximation-ratio experiment, CSV output")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--paper", action="store_true", help="1000 cases per d")
    mode.add_argument("--quick", action="store_true", help="100 cases per d (default)")
    p.add_argument("--d-list", type=_int_list)
    p.add_argument("--cases", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--wmax", type=int)
    p.add_argument("--density", type=float)
    p.add_argument("--algs", help="comma-separated subset of " + ",".join(ALGORITHMS))
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=_uint64, required=True)
    p.add_argument("--csv", required=True)
    p.add_argument("-q", "--quiet", action="store_true")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
