"""Iterative compression for minimum-span temporal covers.

Given a cover ``S`` of ``G - {w}`` with span at most ``k``, a cover of ``G``
with span at most ``k`` is searched for by guessing how the positive-span
vertices of ``S`` (plus ``w``) are rearranged, then deciding whether the
remaining vertices can be fitted around that guess with a constrained
digraph pair cut.

Terminology used below:

``core``
    base vertices with positive span in ``S``, plus ``w``.
``core_times``
    timestamps at which a non-``w`` core vertex is active in ``S``.
``flat``
    every other base vertex; ``S`` gives each a single occurrence, its
    *pivot*, normalized to lie strictly inside the time domain.
``fixed`` / ``dropped``
    core vertices a guess keeps (non-empty interval) or leaves out.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Mapping, Optional

from .core import (
    GraphError,
    TemporalAssignment,
    TemporalCover,
    TemporalGraph,
    edgeless_ends,
    induced_subgraph,
    is_temporal_cover,
    pad_dummy_timestamps,
    span_of,
    total_span,
    unpad_assignment,
)
from .paircut import CdpcInstance, solve_cdpc

log = logging.getLogger(__name__)

SOURCE = ("s",)


class InvariantError(AssertionError):
    """A structural property the construction relies on does not hold."""


# -- context ---------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CompressionContext:
    graph: TemporalGraph
    new_vertex: object
    prior_cover: TemporalAssignment
    budget: int
    core: tuple
    core_occurrences: frozenset
    core_times: frozenset
    flat: tuple
    flat_pivot: Mapping

    @property
    def horizon(self) -> int:
        return self.graph.horizon


def derive_context(graph: TemporalGraph, w, prior: Mapping, budget: int) -> CompressionContext:
    """Compute the core/flat split of a prior cover ``prior`` of ``graph - {w}``.

    ``graph`` must have edgeless first and last timestamps.  Flat pivots at
    timestamp 1 or T are moved to timestamp 2.
    """
    if w not in graph:
        raise GraphError(f"new vertex {w!r} is not in the graph")
    T = graph.horizon
    if T < 3 or not edgeless_ends(graph):
        raise GraphError("graph needs edgeless timestamps 1 and T (pad it first)")
    if w in prior:
        raise GraphError(f"prior cover must not assign the new vertex {w!r}")
    rest = induced_subgraph(graph, [v for v in graph.vertices if v != w])
    check = is_temporal_cover(rest, prior)
    if not check:
        raise GraphError(f"prior assignment is not a cover of G - {{w}}: {check.describe()}")
    if total_span(prior) > budget:
        raise GraphError(f"prior cover has span {total_span(prior)} > {budget}")

    core = tuple(v for v in graph.vertices if v == w or span_of(prior, v) > 0)
    occurrences = {(w, t) for t in range(1, T + 1)}
    times = set()
    for v in core:
        if v == w:
            continue
        lo, hi = prior[v]
        occurrences.update((v, t) for t in range(lo, hi + 1))
        times.update(range(lo, hi + 1))
    flat = tuple(v for v in graph.vertices if v not in set(core))
    pivot = {}
    for v in flat:
        t = prior[v][0]
        pivot[v] = 2 if t in (1, T) else t
    return CompressionContext(
        graph=graph,
        new_vertex=w,
        prior_cover=TemporalAssignment(prior),
        budget=budget,
        core=core,
        core_occurrences=frozenset(occurrences),
        core_times=frozenset(times),
        flat=flat,
        flat_pivot=pivot,
    )


def context_violations(ctx: CompressionContext) -> list[str]:
    """Check the size bounds and the flat-pivot coverage property.

    Returns human-readable violations (empty when all hold).
    """
    out = []
    k = ctx.budget
    if len(ctx.core_times) > 2 * k:
        out.append(f"|core_times| = {len(ctx.core_times)} > 2k = {2 * k}")
    if len(ctx.core) - 1 > k:
        out.append(f"{len(ctx.core) - 1} positive-span vertices exceed k = {k}")
    T = ctx.horizon
    for v in ctx.flat:
        if not 2 <= ctx.flat_pivot[v] <= T - 1:
            out.append(f"pivot of {v!r} at {ctx.flat_pivot[v]} touches a dummy timestamp")
    # pivots have span 0 by construction; check they cover what the core leaves
    w = ctx.new_vertex
    for u, v, t in ctx.graph.sorted_edges:
        if w in (u, v):
            continue
        if (u, t) in ctx.core_occurrences or (v, t) in ctx.core_occurrences:
            continue
        if ctx.flat_pivot.get(u) != t and ctx.flat_pivot.get(v) != t:
            out.append(f"edge {u}-{v}@{t} not covered by core or pivots")
    return out


# -- feasible assignments -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FeasibleAssignment:
    assignment: TemporalAssignment
    fixed: frozenset
    dropped: tuple
    dropped_core: frozenset = field(repr=False)

    @classmethod
    def of(cls, ctx: CompressionContext, assignment: Mapping) -> "FeasibleAssignment":
        assignment = TemporalAssignment(assignment)
        fixed = frozenset(v for v in ctx.core if v in assignment)
        dropped = tuple(v for v in ctx.core if v not in assignment)
        dropped_core = frozenset((v, t) for v in dropped for t in ctx.core_times)
        return cls(assignment, fixed, dropped, dropped_core)

    @property
    def dropped_pivot(self) -> dict:
        """Every dropped vertex pivots at timestamp 2."""
        return {v: 2 for v in self.dropped}

    def span(self) -> int:
        return total_span(self.assignment)


def is_feasible(ctx: CompressionContext, assignment: Mapping) -> bool:
    """Whether ``assignment`` (over core vertices only) is a valid guess."""
    w = ctx.new_vertex
    core = set(ctx.core)
    if any(v not in core for v in assignment):
        return False
    if w not in assignment:
        return False
    if total_span(assignment) > ctx.budget:
        return False
    for u, v, t in _core_edges(ctx):
        if not (_on(assignment, u, t) or _on(assignment, v, t)):
            return False
    wlo, whi = assignment[w]
    for v, (lo, hi) in assignment.items():
        if v == w:
            continue
        if any(lo <= t <= hi for t in ctx.core_times):
            continue
        if any(w in ctx.graph.neighbors.get((v, t), ()) and not wlo <= t <= whi
               for t in range(lo, hi + 1)):
            continue
        return False
    return True


def _on(assignment: Mapping, v, t: int) -> bool:
    iv = assignment.get(v)
    return iv is not None and iv[0] <= t <= iv[1]


def _core_edges(ctx: CompressionContext) -> list:
    core = set(ctx.core)
    return [e for e in ctx.graph.sorted_edges if e[0] in core and e[1] in core]


def enumerate_feasible_assignments(ctx: CompressionContext) -> Iterator[FeasibleAssignment]:
    """Yield every feasible assignment once, in a fixed order.

    Branches: an interval for ``w``; occurrences forced by ``w``-edges that
    interval leaves uncovered; for each untouched core vertex, nothing or a
    single core timestamp; then every interval of span at most ``k`` around
    what was chosen.  Results failing the feasibility test are dropped.
    """
    G, T, k, w = ctx.graph, ctx.horizon, ctx.budget, ctx.new_vertex
    others = [v for v in ctx.core if v != w]
    other_set = set(others)
    times = sorted(ctx.core_times)
    core_edges = _core_edges(ctx)
    emitted = set()

    for wlo, whi in _intervals(1, T, k):
        forced: dict = {}
        for t in range(1, T + 1):
            if wlo <= t <= whi:
                continue
            for u in G.neighbors.get((w, t), ()):
                if u in other_set:
                    lo, hi = forced.get(u, (t, t))
                    forced[u] = (min(lo, t), max(hi, t))
        free = [v for v in others if v not in forced]
        left = k - (whi - wlo)
        for picks in product([None, *times], repeat=len(free)):
            seeds = dict(forced)
            for v, t in zip(free, picks):
                if t is not None:
                    seeds[v] = (t, t)
            seeded = [v for v in others if v in seeds]
            for combo in _extend(seeded, seeds, 0, left, T, {w: (wlo, whi)}):
                if not all(_on(combo, u, t) or _on(combo, v, t) for u, v, t in core_edges):
                    continue
                key = frozenset(combo.items())
                if key in emitted:
                    continue
                emitted.add(key)
                ordered = {v: combo[v] for v in ctx.core if v in combo}
                yield FeasibleAssignment.of(ctx, ordered)


def _intervals(lo: int, hi: int, max_span: int):
    for a in range(lo, hi + 1):
        for b in range(a, min(hi, a + max_span) + 1):
            yield a, b


def _extend(seeded, seeds, i, left, T, partial):
    if i == len(seeded):
        yield dict(partial)
        return
    v = seeded[i]
    a, b = seeds[v]
    need = b - a
    if need > left:
        return
    for lo in range(max(1, b - left), a + 1):
        for hi in range(b, min(T, lo + left) + 1):
            partial[v] = (lo, hi)
            yield from _extend(seeded, seeds, i + 1, left - (hi - lo), T, partial)
    partial.pop(v, None)


def agrees_with(cover: Mapping, fa: FeasibleAssignment, ctx: CompressionContext) -> bool:
    """Whether a full cover matches the guess on kept vertices and contains
    every flat neighbour of a dropped vertex at a core timestamp."""
    for v in fa.fixed:
        if cover.get(v) != fa.assignment[v]:
            return False
    flat = set(ctx.flat)
    for v in fa.dropped:
        for t in ctx.core_times:
            for u in ctx.graph.neighbors.get((v, t), ()):
                if u in flat and not _on(cover, u, t):
                    return False
    return True


# -- pair-cut construction -------------------------------------------------------------

def positive(v, t):
    return ("+", v, t)


def negative(v, t):
    return ("-", v, t)


@dataclass(eq=False)
class GadgetMap:
    """Names of the pair-cut vertices and the gadget each belongs to.

    Vertices are tuples ``(kind, base_vertex, timestamp)`` with ``kind`` one
    of ``+``, ``-``, ``b``, ``c``, ``d``; the source is ``("s",)``.
    """

    pivot: dict
    roles: dict
    instance: Optional[CdpcInstance] = None
    source: tuple = SOURCE

    def gadget(self, v) -> list:
        return [x for x, role in self.roles.items() if role[1] == v]

    def has_positive(self, v, t) -> bool:
        return positive(v, t) in self.roles

    def has_negative(self, v, t) -> bool:
        return negative(v, t) in self.roles


def _gadget(v, i: int, T: int):
    """Vertices, arcs, deletable arcs and pairs of one span gadget."""
    others = [j for j in range(1, T + 1) if j != i]
    verts = [positive(v, j) if j != i else negative(v, i) for j in range(1, T + 1)]
    b = {j: ("b", v, j) for j in others}
    c = {j: ("c", v, j) for j in others}
    d = {j: ("d", v, j) for j in others}
    verts += [b[j] for j in others] + [c[j] for j in others] + [d[j] for j in others]
    arcs, deletable = [], []
    for j in others:
        arcs += [(positive(v, j), b[j]), (positive(v, j), c[j]), (c[j], d[j]), (d[j], negative(v, i))]
        deletable.append((c[j], d[j]))
    for j in range(i - 1, 1, -1):         # b_{i-1} -> ... -> b_1
        arcs.append((b[j], b[j - 1]))
    for j in range(1, i - 1):             # c_1 -> ... -> c_{i-1}
        arcs.append((c[j], c[j + 1]))
    for j in range(i + 1, T):             # b_{i+1} -> ... -> b_T
        arcs.append((b[j], b[j + 1]))
    for j in range(T, i + 1, -1):         # c_T -> ... -> c_{i+1}
        arcs.append((c[j], c[j - 1]))
    pairs = []
    left = range(1, i)
    right = range(i + 1, T + 1)
    pairs += [(d[h], b[j]) for h in left for j in left if h < j]
    pairs += [(d[h], b[j]) for j in right for h in right if j < h]
    pairs += [(c[h], d[j]) for h in left for j in right]
    pairs += [(c[h], d[j]) for j in left for h in right]
    return verts, arcs, deletable, pairs


def build_cdpc_instance(ctx: CompressionContext, fa: FeasibleAssignment) -> tuple[CdpcInstance, GadgetMap]:
    """Pair-cut instance whose solutions of size ``k - span(guess)`` are the
    covers agreeing with the guess."""
    k_left = ctx.budget - fa.span()
    if k_left < 0:
        raise ValueError(f"guess has span {fa.span()} > budget {ctx.budget}")
    G, T = ctx.graph, ctx.horizon
    X = fa.assignment
    pivot = {}
    for v in G.vertices:
        if v in ctx.flat_pivot:
            pivot[v] = ctx.flat_pivot[v]
        elif v in fa.dropped:
            pivot[v] = 2

    vertices = [SOURCE]
    roles = {}
    arcs, deletable, pairs = [], [], []
    for v in G.vertices:
        if v not in pivot:
            continue
        gv, ga, gd, gp = _gadget(v, pivot[v], T)
        vertices += gv
        roles.update((x, (x[0], v, x[2])) for x in gv)
        arcs += ga
        deletable += gd
        pairs += gp

    flat = set(ctx.flat)
    dropped = set(fa.dropped)
    fixed = fa.fixed
    dropped_core = fa.dropped_core

    def pivoted(v, t):
        return pivot.get(v) == t

    def free(v, t):
        # occurrence whose membership the cut decides, outside the core timestamps
        return v in flat or (v in dropped and (v, t) not in dropped_core)

    for u, v, t in G.sorted_edges:
        # dropped vertices may only meet fixed or flat ones
        for a, b in ((u, v), (v, u)):
            if a in dropped and b not in fixed:
                if b not in flat:
                    raise InvariantError(f"edge {u}-{v}@{t} joins two dropped vertices")
                if (a, t) not in dropped_core and ctx.flat_pivot[b] != t:
                    raise InvariantError(f"edge {u}-{v}@{t}: flat end is not at its pivot")
        if free(u, t) and free(v, t):
            if pivoted(u, t) and pivoted(v, t):
                pairs.append((negative(u, t), negative(v, t)))
            elif pivoted(u, t):
                arcs.append((negative(u, t), positive(v, t)))
            elif pivoted(v, t):
                arcs.append((negative(v, t), positive(u, t)))
            else:
                raise InvariantError(f"edge {u}-{v}@{t} has no pivot endpoint")
            continue
        for a, b in ((u, v), (v, u)):
            forcing = (a in fixed and not _on(X, a, t)) or (a, t) in dropped_core
            if forcing and b in flat:
                if pivoted(b, t):
                    pairs.append((SOURCE, negative(b, t)))
                else:
                    arcs.append((SOURCE, positive(b, t)))

    instance = CdpcInstance(vertices, arcs, SOURCE, pairs, deletable, k_left)
    return instance, GadgetMap(pivot=pivot, roles=roles, instance=instance)


def reconstruct_cover(ctx: CompressionContext, fa: FeasibleAssignment, cut, gmap: GadgetMap) -> TemporalCover:
    """Turn a pair-cut solution into a cover of ``ctx.graph``.

    Kept core vertices copy the guess.  A gadget vertex is active at ``t``
    when the source reaches its positive occurrence or fails to reach its
    negative one; gaps are filled and empty vertices get timestamp 2.
    """
    H = gmap.instance
    cut = frozenset(cut)
    if not cut <= H.deletable or len(cut) > H.budget:
        raise ValueError("cut is not a set of at most k' deletable arcs")
    seen = H.reachable(removed_arcs=cut)
    for a, b in H.pairs:
        if a in seen and b in seen:
            raise ValueError(f"cut leaves forbidden pair {a}, {b} reachable")
    out = {}
    for v in ctx.graph.vertices:
        if v in fa.fixed:
            out[v] = fa.assignment[v]
            continue
        i = gmap.pivot[v]
        ts = [t for t in range(1, ctx.horizon + 1)
              if (t != i and positive(v, t) in seen) or (t == i and negative(v, t) not in seen)]
        out[v] = (min(ts), max(ts)) if ts else (2, 2)
    cover = TemporalCover.of(ctx.graph, out)
    if total_span(cover) > ctx.budget:
        raise InvariantError(f"reconstructed cover has span {total_span(cover)} > {ctx.budget}")
    return cover


# -- driver ----------------------------------------------------------------------------

class Observer:
    """Hook points for inspecting a run; the default does nothing."""

    def on_context(self, ctx: CompressionContext) -> None:
        pass

    def on_instance(self, ctx, fa, instance, gmap) -> None:
        pass

    def on_solution(self, ctx, fa, cut, gmap, cover) -> None:
        pass


def _try(ctx: CompressionContext, fa: FeasibleAssignment, observer: Optional[Observer] = None):
    instance, gmap = build_cdpc_instance(ctx, fa)
    if observer is not None:
        observer.on_instance(ctx, fa, instance, gmap)
    cut = solve_cdpc(instance)
    if cut is None:
        return None
    cover = reconstruct_cover(ctx, fa, cut, gmap)
    if observer is not None:
        observer.on_solution(ctx, fa, cut, gmap, cover)
    return cover


def _try_packed(args):
    return _try(*args)


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("TLCOVER_JOBS", "1")))
    except ValueError:
        return 1


def solve_restricted(ctx: CompressionContext, *, observer: Optional[Observer] = None,
                     jobs: int = 1) -> Optional[TemporalCover]:
    """A cover of ``ctx.graph`` with span at most ``ctx.budget``, or ``None``.

    With ``jobs > 1`` guesses are solved in worker processes and observers
    are not called for instances.
    """
    if observer is not None:
        observer.on_context(ctx)
    stream = enumerate_feasible_assignments(ctx)
    if jobs <= 1:
        for fa in stream:
            cover = _try(ctx, fa, observer)
            if cover is not None:
                return cover
        return None
    ex = ProcessPoolExecutor(max_workers=jobs)
    try:
        for cover in ex.map(_try_packed, ((ctx, fa) for fa in stream), chunksize=16):
            if cover is not None:
                return cover
        return None
    finally:
        ex.shutdown(wait=False, cancel_futures=True)


def solve_min_timeline_cover(graph: TemporalGraph, budget: int, *, observer: Optional[Observer] = None,
                             jobs: Optional[int] = None) -> Optional[TemporalCover]:
    """Decide whether ``graph`` has a cover of span at most ``budget``.

    Vertices are added in graph order, re-solving after each insertion
    starting from the previous cover.  Returns a cover or ``None``.
    """
    if budget < 0:
        return None
    if graph.n == 0:
        return TemporalCover({})
    jobs = default_jobs() if jobs is None else jobs
    padded, offset = pad_dummy_timestamps(graph)
    order = graph.vertices
    cover = TemporalAssignment({order[0]: (1, 1)})
    for i in range(1, len(order)):
        sub = induced_subgraph(padded, order[: i + 1])
        ctx = derive_context(sub, order[i], cover, budget)
        cover = solve_restricted(ctx, observer=observer, jobs=jobs)
        if cover is None:
            log.debug("no cover of span <= %d after adding %r", budget, order[i])
            return None
    return TemporalCover.of(graph, unpad_assignment(cover, offset, graph.horizon))
