#!/usr/bin/env python3
"""Compare the compiled and pure-Python pair-cut kernels.

Runs the same workloads under each available backend and prints the best
of ``--repeat`` wall-clock timings::

    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --repeat 5 --json out.json
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from itertools import combinations

from tlcover.compression import solve_min_timeline_cover
from tlcover.io import generate_instance
from tlcover.paircut import CdpcInstance, cdpc_to_vdpc, solve_vdpc
from tlcover.paircut import _kernels


def fan(m: int, extra: int, k: int = 8) -> CdpcInstance:
    xs = [f"x{i}" for i in range(m)]
    ys = [f"y{i}" for i in range(extra)]
    arcs = [("s", x) for x in xs] + [(xs[i], ys[i]) for i in range(extra)]
    pairs = list(combinations(xs, 2)) + [(ys[i], xs[(i + 1) % m]) for i in range(extra)]
    return CdpcInstance(["s", *xs, *ys], arcs, "s", pairs, [("s", x) for x in xs], k)


def layered(seed: int, k: int = 8) -> CdpcInstance:
    rng = random.Random(seed)
    first = [f"p{i}" for i in range(6)]
    second = [f"q{i}" for i in range(7)]
    arcs = [("s", a) for a in first]
    deletable = list(arcs)
    for a in first:
        for b in rng.sample(second, 2):
            arcs.append((a, b))
            if rng.random() < 0.5:
                deletable.append((a, b))
    pairs = [tuple(rng.sample(second, 2)) for _ in range(8)]
    return CdpcInstance(["s", *first, *second], arcs, "s", pairs, deletable[:13], k)


def workloads():
    reduced = {f"vdpc fan{m}": cdpc_to_vdpc(fan(m, 4))[0] for m in (9, 10, 12)}
    reduced.update({f"vdpc layered{s}": cdpc_to_vdpc(layered(s))[0] for s in range(3)})
    for name, inst in reduced.items():
        yield name, (lambda inst=inst: solve_vdpc(inst))
    graphs = [generate_instance(5, 5, 0.3, seed) for seed in range(8)]
    yield "pipeline 8 graphs n=5 T=5 k=4", lambda: [solve_min_timeline_cover(g, 4, jobs=1) for g in graphs]


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", dest="json_path", help="also write results here")
    args = ap.parse_args(argv)

    backends = _kernels.available()
    if "cython" not in backends:
        print("compiled kernels are not built; only the pure backend is timed", file=sys.stderr)
    jobs = list(workloads())
    results = {}
    try:
        for backend in backends:
            _kernels.set_backend(backend)
            for name, fn in jobs:
                results.setdefault(name, {})[backend] = best_of(fn, args.repeat)
    finally:
        _kernels.set_backend("cython" if "cython" in backends else "python")

    width = max(len(n) for n in results)
    header = f"{'workload':<{width}}  " + "  ".join(f"{b:>10}" for b in backends)
    if len(backends) == 2:
        header += "   speedup"
    print(header)
    for name, row in results.items():
        line = f"{name:<{width}}  " + "  ".join(f"{row[b]:>9.4f}s" for b in backends)
        if len(backends) == 2:
            line += f"   {row['python'] / row['cython']:>6.1f}x"
        print(line)
    if args.json_path:
        with open(args.json_path, "w") as fh:
            json.dump(results, fh, indent=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
