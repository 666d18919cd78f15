"""Exhaustive reference solvers and the polynomial span-0 decider.

Everything here is deliberately simple.  These functions are the ground
truth the FPT pipeline is checked against, so they share no code with it
beyond the graph model.
"""

from __future__ import annotations

from itertools import combinations
from typing import Optional, Sequence

from .core import TemporalCover, TemporalGraph


def _intervals(horizon: int) -> list[tuple[int, int]]:
    return [(lo, hi) for lo in range(1, horizon + 1) for hi in range(lo, horizon + 1)]


def brute_force_min_cover(graph: TemporalGraph, budget: Optional[int] = None):
    """Minimum-span temporal cover by exhaustive interval search.

    Returns ``(cover, span)`` or ``None`` when ``budget`` is given and no
    cover of span at most ``budget`` exists.  Among optimal covers the
    lexicographically least by (vertex order, lo, hi) is returned.
    """
    if budget is not None and budget < 0:
        return None
    if graph.n == 0:
        return TemporalCover({}), 0

    best = _min_span(graph, budget)
    if best is None:
        return None
    cover = _first_cover(graph, best)
    return TemporalCover(cover), best


def _min_span(graph: TemporalGraph, budget: Optional[int]) -> Optional[int]:
    # vertices by degree, descending, so conflicts surface early
    order = sorted(graph.vertices, key=lambda v: (-graph.degree(v), graph.index[v]))
    pos = {v: i for i, v in enumerate(order)}
    # edges checked once both endpoints are placed
    checks: list[list[tuple]] = [[] for _ in order]
    for u, v, t in graph.edges:
        a, b = (u, v) if pos[u] < pos[v] else (v, u)
        checks[pos[b]].append((a, t))
    intervals = sorted(_intervals(graph.horizon), key=lambda iv: iv[1] - iv[0])
    # limit is the largest span still worth exploring
    limit = graph.n * (graph.horizon - 1) if budget is None else budget
    best = [None]
    chosen: dict = {}

    def rec(i: int, span: int, limit: int) -> None:
        if i == len(order):
            best[0] = span
            return
        v = order[i]
        for lo, hi in intervals:
            s = span + hi - lo
            if best[0] is not None:
                limit = best[0] - 1
            if s > limit:
                break
            ok = True
            for a, t in checks[i]:
                if not (lo <= t <= hi):
                    alo, ahi = chosen[a]
                    if not (alo <= t <= ahi):
                        ok = False
                        break
            if ok:
                chosen[v] = (lo, hi)
                rec(i + 1, s, limit)
                del chosen[v]

    rec(0, 0, limit)
    return best[0]


def _first_cover(graph: TemporalGraph, span: int) -> dict:
    """Lexicographically least cover of total span exactly ``span``."""
    order = list(graph.vertices)
    pos = graph.index
    checks: list[list[tuple]] = [[] for _ in order]
    for u, v, t in graph.edges:
        a, b = (u, v) if pos[u] < pos[v] else (v, u)
        checks[pos[b]].append((a, t))
    intervals = _intervals(graph.horizon)
    chosen: dict = {}

    def rec(i: int, used: int) -> bool:
        if i == len(order):
            return used == span
        v = order[i]
        for lo, hi in intervals:
            if used + hi - lo > span:
                continue
            if all(lo <= t <= hi or chosen[a][0] <= t <= chosen[a][1] for a, t in checks[i]):
                chosen[v] = (lo, hi)
                if rec(i + 1, used + hi - lo):
                    return True
                del chosen[v]
        return False

    found = rec(0, 0)
    assert found, "span reported by the search has no witness"
    return {v: chosen[v] for v in order}


# -- 2-SAT -----------------------------------------------------------------

def solve_2sat(num_vars: int, clauses: Sequence[tuple[int, int]]) -> Optional[list[bool]]:
    """Satisfy a 2-CNF formula or return ``None``.

    Literals are DIMACS-style: ``+i`` / ``-i`` for variable ``i`` in
    ``1..num_vars``.  Uses the implication graph and Tarjan's SCC algorithm
    (iterative), linear in the formula size.
    """
    n = 2 * num_vars

    def node(lit: int) -> int:
        return 2 * (abs(lit) - 1) + (lit < 0)

    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in clauses:
        # (a or b) == (not a -> b) and (not b -> a)
        adj[node(-a)].append(node(b))
        adj[node(-b)].append(node(a))

    comp = _tarjan(adj)
    values = []
    for i in range(num_vars):
        pos, neg = comp[2 * i], comp[2 * i + 1]
        if pos == neg:
            return None
        # Tarjan emits components in reverse topological order
        values.append(pos < neg)
    return values


def _tarjan(adj: list[list[int]]) -> list[int]:
    n = len(adj)
    index = [-1] * n
    low = [0] * n
    comp = [-1] * n
    on_stack = [False] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(adj[v]):
                work[-1] = (v, i + 1)
                w = adj[v][i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


def zero_span_encoding(graph: TemporalGraph):
    """2-CNF whose models are the span-0 covers of ``graph``.

    One variable per (vertex, timestamp) where the vertex has an incident
    edge, meaning "the vertex is active exactly there".  Returns
    ``(variables, clauses)`` with ``variables[i-1] = (v, t)``.
    """
    variables = []
    var_of = {}
    for v in graph.vertices:
        for t in range(1, graph.horizon + 1):
            if (v, t) in graph.neighbors:
                var_of[(v, t)] = len(variables) + 1
                variables.append((v, t))
    clauses = []
    for u, v, t in graph.sorted_edges:
        clauses.append((var_of[(u, t)], var_of[(v, t)]))
    for v in graph.vertices:
        own = [var_of[(v, t)] for t in range(1, graph.horizon + 1) if (v, t) in var_of]
        for a, b in combinations(own, 2):
            clauses.append((-a, -b))
    return variables, clauses


def zero_span_decider(graph: TemporalGraph) -> Optional[TemporalCover]:
    """Return a span-0 temporal cover, or ``None`` if none exists."""
    variables, clauses = zero_span_encoding(graph)
    model = solve_2sat(len(variables), clauses)
    if model is None:
        return None
    chosen = {}
    for (v, t), val in zip(variables, model):
        if val:
            chosen[v] = (t, t)
    # a vertex no clause forced true covers nothing; any singleton works
    out = {v: chosen.get(v, (1, 1)) for v in graph.vertices}
    return TemporalCover(out)


# -- vertex-deletion pair cut ------------------------------------------------

def brute_force_vdpc(instance) -> Optional[frozenset]:
    """Smallest deletion set of size <= budget, by subset enumeration.

    Subsets are tried by increasing size, then in vertex order, so the
    answer is deterministic.
    """
    verts = list(instance.vertices)
    ix = {v: i for i, v in enumerate(verts)}
    out = [0] * len(verts)
    for u, v in instance.arcs:
        out[ix[u]] |= 1 << ix[v]
    src = ix[instance.source]
    pair_masks = [(1 << ix[a]) | (1 << ix[b]) for a, b in instance.pairs]
    candidates = [i for i in range(len(verts)) if i != src]

    def separated(removed: int) -> bool:
        seen = 1 << src
        frontier = seen
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= out[low.bit_length() - 1]
                f ^= low
            nxt &= ~removed
            frontier = nxt & ~seen
            seen |= frontier
        return all(seen & m != m for m in pair_masks)

    for size in range(0, instance.budget + 1):
        for combo in combinations(candidates, size):
            removed = 0
            for i in combo:
                removed |= 1 << i
            if separated(removed):
                return frozenset(verts[i] for i in combo)
    return None


def brute_force_cdpc(instance) -> Optional[frozenset]:
    """Smallest set of deletable arcs that separates every pair."""
    deletable = list(instance.deletable)
    for size in range(0, instance.budget + 1):
        for combo in combinations(deletable, size):
            removed = set(combo)
            seen = {instance.source}
            stack = [instance.source]
            out: dict = {}
            for u, v in instance.arcs:
                if (u, v) not in removed:
                    out.setdefault(u, []).append(v)
            while stack:
                x = stack.pop()
                for y in out.get(x, ()):
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            if all(not (a in seen and b in seen) for a, b in instance.pairs):
                return frozenset(combo)
    return None
