"""Command-line front end.

Subcommands: core (reduce a graph and write core + trace), check
(colorability / choosability / free-choosability verdicts), lift (solve a
core and extend the solution along a trace), verify (run a named suite),
lattice (generate seeded regions).

Exit codes are a contract: 0 the property holds / command succeeded,
1 refuted or lift infeasible, 2 malformed input or exhausted budget,
3 sampled evidence of a pass (not a proof).
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import compute_core, lift_choosability
from .errors import (BudgetExceededError, InputError, PreconditionError,
                     ResidualInfeasibleError)
from .jsonio import (choice_to_json, dump_json, graph_from_json, graph_to_json,
                     lists_from_json, load_json, parse_fraction, trace_from_json,
                     trace_to_json, verdict_to_json)
from .lattice import generate_region, write_region_file
from .listcolor import (ABParams, is_ab_choosable, is_ab_colorable,
                        is_ab_free_choosable, solve_list_weight, Verdict)
from .suites import SUITES

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_INPUT = 2
EXIT_SAMPLED_PASS = 3


def _cmd_core(args) -> int:
    g = graph_from_json(load_json(args.graph))
    x = parse_fraction(args.x)
    core_graph, trace = compute_core(g, x, level=args.level, variant=args.variant)
    if args.core:
        dump_json(graph_to_json(core_graph), args.core)
    if args.trace:
        dump_json(trace_to_json(trace), args.trace)
    print(f"core size {core_graph.n} (removed {g.n - core_graph.n} of {g.n} vertices "
          f"in {len(trace.steps)} steps)")
    return EXIT_OK


def _cmd_check(args) -> int:
    g = graph_from_json(load_json(args.graph))
    params = ABParams(args.a, args.b)
    sampled = args.samples is not None
    mode = "sampled" if sampled else "exhaustive"
    if args.mode == "colorable":
        if sampled:
            raise InputError("colorability is a single exact instance; --samples does not apply")
        holds, witness = is_ab_colorable(g, params)
        verdict = Verdict(holds, "exhaustive", witness=witness)
    elif args.mode == "choosable":
        verdict = is_ab_choosable(g, params, mode=mode, trials=args.samples, seed=args.seed)
    elif args.mode == "free-choosable":
        verdict = is_ab_free_choosable(g, args.vertex, params, mode=mode,
                                       trials=args.samples, seed=args.seed)
    else:
        raise InputError(f"unknown mode {args.mode!r}")
    print(json.dumps(verdict_to_json(verdict), sort_keys=True))
    if not verdict.holds:
        return EXIT_REFUTED
    return EXIT_OK if verdict.is_proof else EXIT_SAMPLED_PASS


def _cmd_lift(args) -> int:
    g = graph_from_json(load_json(args.graph))
    trace = trace_from_json(load_json(args.trace))
    lists = lists_from_json(load_json(args.lists))
    core_lists = {v: lists[v] for v in trace.core if v in lists}
    if len(core_lists) != len(trace.core):
        raise InputError("lists file does not cover all core vertices")
    core_choice = {}
    if trace.core:
        from .graph import induced_subgraph
        core_graph, mapping = induced_subgraph(g, trace.core)
        solved = solve_list_weight(core_graph, {mapping[v]: core_lists[v] for v in trace.core},
                                   {mapping[v]: args.b for v in trace.core})
        if solved is None:
            print("core instance unsolvable: the given lists admit no choice on the core",
                  file=sys.stderr)
            return EXIT_REFUTED
        inverse = {new: old for old, new in mapping.items()}
        core_choice = {inverse[u]: solved[u] for u in solved}
    try:
        choice = lift_choosability(g, trace, lists, core_choice, args.b)
    except ResidualInfeasibleError as exc:
        print(f"lift infeasible: {exc}", file=sys.stderr)
        return EXIT_REFUTED
    dump_json(choice_to_json(choice), args.output)
    print(f"assignment written to {args.output}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    suite = SUITES[args.suite]
    kwargs = {}
    if args.trials is not None:
        kwargs["trials" if args.suite in ("waterfall", "cor48", "thm49") else "regions"] = args.trials
    if args.seed is not None:
        kwargs["seed"] = args.seed
    result = suite(**kwargs)
    print(result.summary())
    return EXIT_OK if result.ok else EXIT_REFUTED


def _cmd_lattice(args) -> int:
    region = generate_region(args.shape, args.size, args.seed,
                             triangle_free=args.triangle_free)
    write_region_file(region, args.output)
    print(f"region with {region.n} vertices written to {args.output}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="choosability",
        description="exact list-multicoloring checks and extended-core reduction")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("core", help="reduce a graph to its extended core")
    p.add_argument("graph", help="graph JSON file")
    p.add_argument("--x", required=True, help="exact rational parameter, NUM or NUM/DEN")
    p.add_argument("--level", type=int, choices=(1, 2), default=1)
    p.add_argument("--variant", choices=("ch", "co"), default="ch")
    p.add_argument("--trace", help="write the reduction trace JSON here")
    p.add_argument("--core", help="write the core graph JSON here")
    p.set_defaults(func=_cmd_core)

    p = sub.add_parser("check", help="run a colorability/choosability check")
    p.add_argument("graph", help="graph JSON file")
    p.add_argument("--mode", required=True,
                   choices=("colorable", "choosable", "free-choosable"))
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--vertex", type=int, default=0,
                   help="distinguished vertex for free-choosable")
    p.add_argument("--samples", type=int, help="sampled mode with this many trials")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("lift", help="solve a core and lift along a trace")
    p.add_argument("graph", help="graph JSON file")
    p.add_argument("trace", help="trace JSON file")
    p.add_argument("lists", help="lists JSON file")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("-o", "--output", required=True, help="assignment JSON output")
    p.set_defaults(func=_cmd_lift)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.add_argument("--trials", type=int, help="trial/region count override")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("lattice", help="generate a seeded lattice region")
    p.add_argument("--shape", required=True,
                   choices=("random_walk", "hex_patch", "parallelogram"))
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--triangle-free", action="store_true")
    p.add_argument("-o", "--output", required=True, help="region file output")
    p.set_defaults(func=_cmd_lattice)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, PreconditionError, BudgetExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
