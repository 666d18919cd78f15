import random
from pathlib import Path

import pytest

from tlcover.core import TemporalAssignment, TemporalGraph
from tlcover.io import parse_temporal_graph

DATA = Path(__file__).parent / "data"

FIG1_COVER = {"v": (5, 5), "u": (2, 4), "z": (3, 4), "w": (2, 2)}

# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def fig1():
    return parse_temporal_graph((DATA / "fig1.tg").read_text())


@pytest.fixture
def fig1_cover():
    return TemporalAssignment(FIG1_COVER)


def double_triangle() -> TemporalGraph:
    tri = [("u", "v"), ("v", "w"), ("u", "w")]
    return TemporalGraph(["u", "v", "w"], 2, [(a, b, t) for t in (1, 2) for a, b in tri])


def random_graph(rng: random.Random, n: int, T: int, p: float) -> TemporalGraph:
    names = [f"v{i}" for i in range(1, n + 1)]
    edges = [(names[i], names[j], t) for i in range(n) for j in range(i + 1, n)
             for t in range(1, T + 1) if rng.random() < p]
    return TemporalGraph(names, T, edges)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}")


def random_cdpc(rng: random.Random, max_vertices=6, max_deletable=6, max_budget=3):
    """Random arc-deletion instance; most pairs join vertices the source
    reaches so that few instances are solved by doing nothing."""
    from tlcover.paircut import CdpcInstance, reachable_from_source

    n = rng.randint(2, max_vertices)
    names = ["s"] + [f"x{i}" for i in range(1, n)]
    p = rng.choice([0.25, 0.4, 0.55])
    arcs = [(a, b) for a in names for b in names if a != b and rng.random() < p]
    deletable = rng.sample(arcs, min(len(arcs), rng.randint(0, max_deletable)))
    reached = sorted(reachable_from_source(CdpcInstance(names, arcs, "s")), key=names.index)
    pool = reached if len(reached) >= 2 and rng.random() < 0.8 else names
    all_pairs = [(a, b) for i, a in enumerate(pool) for b in pool[i + 1:]]
    pairs = rng.sample(all_pairs, min(len(all_pairs), rng.randint(1, 4)))
    return CdpcInstance(names, arcs, "s", pairs, deletable, rng.randint(0, max_budget))


def random_context(rng: random.Random, max_n=5, max_horizon=6, max_budget=3, max_core=3):
    """A compression context built from a random padded graph, or ``None``
    when the drawn graph minus the new vertex has no cover within budget."""
    from tlcover.compression import derive_context
    from tlcover.core import induced_subgraph, is_temporal_cover, pad_dummy_timestamps, total_span
    from tlcover.oracle import brute_force_min_cover

    g = random_graph(rng, rng.randint(2, max_n), rng.randint(1, max_horizon - 2), rng.choice([0.2, 0.35, 0.5]))
    g, _ = pad_dummy_timestamps(g)
    w = rng.choice(g.vertices)
    k = rng.randint(0, max_budget)
    rest = induced_subgraph(g, [v for v in g.vertices if v != w])
    found = brute_force_min_cover(rest, k)
    if found is None:
        return None
    prior = dict(found[0])
    # widen a few intervals while the budget and the core-size limit allow
    for _ in range(rng.randint(0, 3)):
        v = rng.choice(rest.vertices)
        lo, hi = prior[v]
        lo, hi = (max(1, lo - 1), hi) if rng.random() < 0.5 else (lo, min(g.horizon, hi + 1))
        trial = {**prior, v: (lo, hi)}
        core = sum(1 for a, b in trial.values() if b > a) + 1
        if total_span(trial) <= k and core <= max_core:
            prior = trial
    if sum(1 for a, b in prior.values() if b > a) + 1 > max_core:
        return None
    assert is_temporal_cover(rest, prior)
    return derive_context(g, w, prior, k)


def definition6_assignments(ctx) -> set:
    """All feasible guesses of a context, straight from the four
    conditions, as frozensets of (vertex, (lo, hi)) items."""
    from itertools import product

    g, T, k, w = ctx.graph, ctx.horizon, ctx.budget, ctx.new_vertex
    core = list(ctx.core)
    choices = [None] + [(lo, hi) for lo in range(1, T + 1) for hi in range(lo, T + 1)]
    core_edges = [(u, v, t) for u, v, t in g.edges if u in core and v in core]
    out = set()
    for combo in product(choices, repeat=len(core)):
        x = {v: iv for v, iv in zip(core, combo) if iv is not None}
        if w not in x:
            continue
        if sum(hi - lo for lo, hi in x.values()) > k:
            continue
        occ = {(v, t) for v, (lo, hi) in x.items() for t in range(lo, hi + 1)}
        if any((u, t) not in occ and (v, t) not in occ for u, v, t in core_edges):
            continue
        ok = True
        for v, (lo, hi) in x.items():
            if v == w:
                continue
            own = range(lo, hi + 1)
            if any(t in ctx.core_times for t in own):
                continue
            if any(g.has_edge(v, w, t) and (w, t) not in occ for t in own):
                continue
            ok = False
            break
        if ok:
            out.add(frozenset(x.items()))
    return out
