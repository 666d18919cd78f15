"""Exact pair-cut solvers.

``solve_vdpc`` branches on forbidden pairs guided by minimum vertex cuts:
it keeps a set of terminals that must end up unreachable, computes the
minimum source-terminal vertex cut closest to the source, and if some pair
is still fully reachable past that cut, branches on which endpoint becomes a
terminal.  Every branch raises the cut value, so the search tree has at most
``2^(k+1)`` leaves.

``solve_cdpc`` handles arc deletion by reducing to the vertex variant.
"""

from __future__ import annotations

import logging
from array import array
from dataclasses import dataclass
from typing import Optional

from . import _kernels
from .instances import CdpcInstance, VdpcInstance

log = logging.getLogger(__name__)

_INF = 1 << 29


def reachable_from_source(instance, removed_vertices=(), removed_arcs=()) -> set:
    """Forward reachability from ``instance.source``.

    Removed vertices are never entered; the source is always reached.
    """
    removed_vertices = set(removed_vertices)
    removed_arcs = set(removed_arcs)
    out: dict = {}
    for u, v in instance.arcs:
        if (u, v) not in removed_arcs:
            out.setdefault(u, []).append(v)
    seen = {instance.source}
    stack = [instance.source]
    while stack:
        x = stack.pop()
        for y in out.get(x, ()):
            if y not in seen and y not in removed_vertices:
                seen.add(y)
                stack.append(y)
    return seen


# -- reduction -----------------------------------------------------------------

@dataclass(frozen=True)
class Copy:
    """The ``index``-th copy of an arc-deletion vertex."""

    vertex: object
    index: int

    def __str__(self) -> str:
        return f"{_fmt(self.vertex)}^{self.index}"


@dataclass(frozen=True)
class ArcVertex:
    """The ``index``-th vertex standing for arc ``(tail, head)``."""

    tail: object
    head: object
    index: int

    def __str__(self) -> str:
        return f"m[{_fmt(self.tail)}->{_fmt(self.head)}]^{self.index}"


class _NewSource:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "s'"

    __str__ = __repr__

    def __reduce__(self):
        return (_NewSource, ())


NEW_SOURCE = _NewSource()


def _fmt(v) -> str:
    if isinstance(v, tuple):
        return "(" + ",".join(map(str, v)) + ")"
    return str(v)


def cdpc_to_vdpc(instance: CdpcInstance) -> tuple[VdpcInstance, dict]:
    """Reduce arc deletion to vertex deletion with the same budget.

    Each vertex gets ``k+1`` copies; each deletable arc becomes one middle
    vertex joined from every tail copy to every head copy; each undeletable
    arc becomes ``k+1`` such middle vertices.  Returns the new instance and
    a map from deletable-arc middle vertices back to their arcs.
    """
    k = instance.budget
    reps = range(1, k + 2)
    vertices = [NEW_SOURCE]
    arcs = []
    for u in instance.vertices:
        vertices.extend(Copy(u, i) for i in reps)
    for i in reps:
        arcs.append((NEW_SOURCE, Copy(instance.source, i)))
    arc_map = {}
    for u, v in instance.arcs:
        if (u, v) in instance.deletable:
            mids = [ArcVertex(u, v, 1)]
            arc_map[mids[0]] = (u, v)
        else:
            mids = [ArcVertex(u, v, l) for l in reps]
        for m in mids:
            vertices.append(m)
            arcs.extend((Copy(u, i), m) for i in reps)
            arcs.extend((m, Copy(v, j)) for j in reps)
    pairs = [(Copy(a, i), Copy(b, j)) for a, b in instance.pairs for i in reps for j in reps]
    return VdpcInstance(vertices, arcs, NEW_SOURCE, pairs, k), arc_map


# -- vertex-deletion solver -------------------------------------------------------

class _SplitNetwork:
    """Unit-vertex-capacity flow network for one instance.

    Node ``2v`` is v-in, ``2v+1`` is v-out and ``2n`` is the super sink.
    Every vertex has a zero-capacity arc to the sink that is opened when the
    vertex becomes a terminal.
    """

    def __init__(self, instance: VdpcInstance):
        n = len(instance.vertices)
        ix = instance.index
        src = ix[instance.source]
        tails, heads, caps = [], [], []

        def add(a, b, c):
            tails.extend((a, b))
            heads.extend((b, a))
            caps.extend((c, 0))
            return len(tails) - 2

        for v in range(n):
            add(2 * v, 2 * v + 1, _INF if v == src else 1)
        for u, v in instance.arcs:
            add(2 * ix[u] + 1, 2 * ix[v], _INF)
        self.sink_arc = [add(2 * v + 1, 2 * n, 0) for v in range(n)]

        nodes = 2 * n + 1
        buckets: list[list[int]] = [[] for _ in range(nodes)]
        for e, a in enumerate(tails):
            buckets[a].append(e)
        indptr = [0]
        flat: list[int] = []
        for b in buckets:
            flat.extend(b)
            indptr.append(len(flat))

        self.n = n
        self.source = src
        self.flow_source = 2 * src + 1
        self.sink = 2 * n
        self.indptr = array("i", indptr)
        self.arcs = array("i", flat)
        self.head = array("i", heads)
        self.initial_cap = array("i", caps)
        g_indptr, g_targets = instance.csr
        self.g_indptr = array("i", g_indptr)
        self.g_targets = array("i", g_targets)
        self.pa = array("i", [ix[a] for a, _ in instance.pairs])
        self.pb = array("i", [ix[b] for _, b in instance.pairs])

    def augment(self, cap) -> bool:
        return bool(_kernels.augment(self.indptr, self.arcs, self.head, cap, self.flow_source, self.sink))

    def closest_cut(self, cap) -> list[int]:
        side = _kernels.residual_reach(self.indptr, self.arcs, self.head, cap, self.flow_source)
        return [v for v in range(self.n) if side[2 * v] and not side[2 * v + 1]]

    def full_pair(self, removed: bytearray) -> int:
        seen = _kernels.reach(self.g_indptr, self.g_targets, self.source, removed)
        return _kernels.first_full_pair(seen, self.pa, self.pb)


@dataclass
class SearchStats:
    nodes: int = 0
    augmentations: int = 0


def solve_vdpc(instance: VdpcInstance, *, minimum: bool = False,
               stats: Optional[SearchStats] = None) -> Optional[frozenset]:
    """Find ``R`` (source excluded, ``|R| <= budget``) separating every pair.

    The returned set is inclusion-minimal.  With ``minimum=True`` the budget
    is raised from 0 until a solution appears, so the result has minimum
    size.
    """
    if not instance.pairs:
        return frozenset()
    net = _SplitNetwork(instance)
    budgets = range(instance.budget + 1) if minimum else (instance.budget,)
    for k in budgets:
        found = _branch(net, net.initial_cap[:], 0, k, stats)
        if found is not None:
            found = _shrink(net, found)
            return frozenset(instance.vertices[v] for v in found)
    return None


def _branch(net: _SplitNetwork, cap, flow: int, k: int, stats) -> Optional[list[int]]:
    if stats is not None:
        stats.nodes += 1
    while flow <= k and net.augment(cap):
        flow += 1
        if stats is not None:
            stats.augmentations += 1
    if flow > k:
        return None
    cut = net.closest_cut(cap)
    removed = bytearray(net.n)
    for v in cut:
        removed[v] = 1
    i = net.full_pair(removed)
    if i < 0:
        return cut
    for x in (net.pa[i], net.pb[i]):
        if x == net.source:
            continue
        sub = cap[:]
        sub[net.sink_arc[x]] = _INF
        found = _branch(net, sub, flow, k, stats)
        if found is not None:
            return found
    return None


def _shrink(net: _SplitNetwork, solution: list[int]) -> list[int]:
    """Drop members whose removal keeps every pair separated."""
    keep = sorted(solution)
    removed = bytearray(net.n)
    for v in keep:
        removed[v] = 1
    for v in list(keep):
        removed[v] = 0
        if net.full_pair(removed) < 0:
            keep.remove(v)
        else:
            removed[v] = 1
    return keep


# -- arc-deletion solver -------------------------------------------------------------

def solve_cdpc(instance: CdpcInstance, *, minimum: bool = False,
               stats: Optional[SearchStats] = None) -> Optional[frozenset]:
    """Find deletable arcs ``F`` (``|F| <= budget``) separating every pair.

    Cheap exact checks come first: nothing to delete, or no solution even
    after deleting every deletable arc.  Otherwise the instance goes through
    :func:`cdpc_to_vdpc` and :func:`solve_vdpc`.
    """
    if instance.is_solution(()):
        return frozenset()
    everything = reachable_from_source(instance, removed_arcs=instance.deletable)
    if not instance._separates(everything):
        return None
    reduced, arc_map = cdpc_to_vdpc(instance)
    removed = solve_vdpc(reduced, minimum=minimum, stats=stats)
    if removed is None:
        return None
    stray = [r for r in removed if r not in arc_map]
    if stray:
        raise AssertionError(f"deletion set uses vertices with no arc counterpart: {stray}")
    cut = frozenset(arc_map[r] for r in removed)
    if not instance.is_solution(cut):
        raise AssertionError("mapped arc set does not separate the pairs")
    return cut
