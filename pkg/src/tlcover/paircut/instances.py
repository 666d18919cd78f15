"""Pair-cut instances: arc deletion with deletable arcs, and vertex deletion."""

from __future__ import annotations

from functools import cached_property
from typing import Iterable


class InstanceError(ValueError):
    pass


class _PairCutInstance:
    """Shared digraph/source/pairs/budget part of both variants.

    Vertex, arc and pair order is preserved (duplicates dropped) and defines
    every tie-break downstream.  Pairs are stored as ``(a, b)`` with ``a``
    before ``b`` in vertex order.
    """

    def __init__(self, vertices: Iterable, arcs: Iterable, source, pairs: Iterable, budget: int):
        self.vertices = tuple(vertices)
        index = {v: i for i, v in enumerate(self.vertices)}
        if len(index) != len(self.vertices):
            raise InstanceError("duplicate vertex")
        if source not in index:
            raise InstanceError(f"source {source!r} is not a vertex")
        if budget < 0:
            raise InstanceError("budget must be non-negative")
        self.index = index
        self.source = source
        self.budget = int(budget)

        seen = set()
        arc_list = []
        for u, v in arcs:
            if u not in index or v not in index:
                raise InstanceError(f"arc ({u!r}, {v!r}) uses an unknown vertex")
            if (u, v) not in seen:
                seen.add((u, v))
                arc_list.append((u, v))
        self.arcs = tuple(arc_list)

        seen = set()
        pair_list = []
        for pair in pairs:
            a, b = pair
            if a not in index or b not in index:
                raise InstanceError(f"pair {{{a!r}, {b!r}}} uses an unknown vertex")
            if a == b:
                raise InstanceError(f"degenerate pair {{{a!r}, {a!r}}}")
            if index[a] > index[b]:
                a, b = b, a
            if (a, b) not in seen:
                seen.add((a, b))
                pair_list.append((a, b))
        self.pairs = tuple(pair_list)

    @cached_property
    def csr(self) -> tuple[list[int], list[int]]:
        """Out-adjacency as ``(indptr, targets)`` over vertex indices."""
        ix = self.index
        buckets: list[list[int]] = [[] for _ in self.vertices]
        for u, v in self.arcs:
            buckets[ix[u]].append(ix[v])
        indptr = [0]
        targets: list[int] = []
        for b in buckets:
            targets.extend(b)
            indptr.append(len(targets))
        return indptr, targets

    def reachable(self, removed_vertices=(), removed_arcs=()) -> set:
        from .solver import reachable_from_source

        return reachable_from_source(self, removed_vertices, removed_arcs)

    def _separates(self, seen: set) -> bool:
        return not any(a in seen and b in seen for a, b in self.pairs)


class CdpcInstance(_PairCutInstance):
    """Constrained digraph pair cut: delete at most ``budget`` arcs, all from
    ``deletable``, so the source reaches at most one vertex of each pair."""

    def __init__(self, vertices, arcs, source, pairs=(), deletable=(), budget=0):
        super().__init__(vertices, arcs, source, pairs, budget)
        self.deletable = frozenset(tuple(a) for a in deletable)
        missing = self.deletable - set(self.arcs)
        if missing:
            raise InstanceError(f"deletable arcs not in the arc set: {sorted(map(repr, missing))}")

    def is_solution(self, cut) -> bool:
        cut = set(cut)
        if not cut <= self.deletable or len(cut) > self.budget:
            return False
        return self._separates(self.reachable(removed_arcs=cut))

    def with_budget(self, budget: int) -> "CdpcInstance":
        return CdpcInstance(self.vertices, self.arcs, self.source, self.pairs, self.deletable, budget)

    def __repr__(self) -> str:
        return (f"CdpcInstance(|V|={len(self.vertices)}, |A|={len(self.arcs)}, "
                f"|D|={len(self.deletable)}, |P|={len(self.pairs)}, k={self.budget})")


class VdpcInstance(_PairCutInstance):
    """Vertex-deletion digraph pair cut; the source itself is undeletable."""

    def __init__(self, vertices, arcs, source, pairs=(), budget=0):
        super().__init__(vertices, arcs, source, pairs, budget)

    def is_solution(self, removed) -> bool:
        removed = set(removed)
        if self.source in removed or len(removed) > self.budget:
            return False
        if any(v not in self.index for v in removed):
            return False
        return self._separates(self.reachable(removed_vertices=removed))

    def with_budget(self, budget: int) -> "VdpcInstance":
        return VdpcInstance(self.vertices, self.arcs, self.source, self.pairs, budget)

    def __repr__(self) -> str:
        return (f"VdpcInstance(|V|={len(self.vertices)}, |A|={len(self.arcs)}, "
                f"|P|={len(self.pairs)}, k={self.budget})")
