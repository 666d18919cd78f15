"""Command-line front end.

Exit status: 0 when a cover/solution is found or a cover verifies, 1 for
UNSAT or an invalid cover, 2 for usage or parse errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time

from . import compression, oracle
from .core import GraphError, is_temporal_cover, total_span
from .io import (
    ParseError,
    declared_span,
    format_temporal_graph,
    generate_instance,
    parse_cover,
    parse_paircut,
    parse_temporal_graph,
    serialize_cover,
)
from .paircut import CdpcInstance, solve_cdpc, solve_vdpc

log = logging.getLogger("tlcover")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def cmd_solve(args) -> int:
    graph = parse_temporal_graph(_read(args.file))
    start = time.perf_counter()
    if args.mode == "brute":
        found = oracle.brute_force_min_cover(graph, args.k)
        cover = None if found is None else found[0]
    else:
        cover = compression.solve_min_timeline_cover(graph, args.k, jobs=args.jobs)
    log.info("solved in %.3fs", time.perf_counter() - start)
    if cover is None:
        print(f"UNSAT k={args.k}")
        return 1
    sys.stdout.write(serialize_cover(cover))
    return 0


def cmd_verify(args) -> int:
    graph = parse_temporal_graph(_read(args.file))
    text = _read(args.cover)
    cover = parse_cover(text)
    try:
        check = is_temporal_cover(graph, cover)
    except GraphError as exc:
        print(f"INVALID: {exc}")
        return 1
    if not check:
        print(f"INVALID: {check.describe()}")
        return 1
    span = total_span(cover)
    claimed = declared_span(text)
    if claimed is not None and claimed != span:
        print(f"INVALID: document claims span {claimed}, actual span is {span}")
        return 1
    if args.k is not None and span > args.k:
        print(f"INVALID: span {span} exceeds k={args.k}")
        return 1
    print(f"VALID span={span}")
    return 0


def cmd_zero_span(args) -> int:
    graph = parse_temporal_graph(_read(args.file))
    cover = oracle.zero_span_decider(graph)
    if cover is None:
        print("NONE")
        return 1
    sys.stdout.write(serialize_cover(cover))
    return 0


def cmd_gen(args) -> int:
    try:
        graph = generate_instance(args.n, args.T, args.p, args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(format_temporal_graph(graph))
    return 0


def cmd_paircut(args) -> int:
    instance = parse_paircut(_read(args.file))
    if isinstance(instance, CdpcInstance):
        found = solve_cdpc(instance, minimum=True)
        if found is None:
            print(f"UNSAT k={instance.budget}")
            return 1
        print(f"SOLUTION {len(found)}")
        for u, v in sorted(found, key=instance.arcs.index):
            print(f"d {u} {v}")
        return 0
    found = solve_vdpc(instance, minimum=True)
    if found is None:
        print(f"UNSAT k={instance.budget}")
        return 1
    print(f"SOLUTION {len(found)}")
    for v in sorted(found, key=instance.index.get):
        print(f"r {v}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tlcover", description="Minimum-span temporal vertex cover")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="find a cover of span at most K")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=["fpt", "brute"], default="fpt")
    p.add_argument("--jobs", type=int, default=None,
                   help="worker processes (default: $TLCOVER_JOBS or 1)")
    p.add_argument("file")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a cover document against a graph")
    p.add_argument("file")
    p.add_argument("cover")
    p.add_argument("--k", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("zero-span", help="decide whether a span-0 cover exists")
    p.add_argument("file")
    p.set_defaults(func=cmd_zero_span)

    p = sub.add_parser("gen", help="print a random instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--T", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("paircut", help="solve a pair-cut instance file")
    p.add_argument("file")
    p.set_defaults(func=cmd_paircut)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ParseError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
