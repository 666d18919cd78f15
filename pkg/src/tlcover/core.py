"""Temporal graphs, interval assignments and span accounting.

A temporal graph has a fixed set of base vertices that exist at every
timestamp ``1..T``; each edge joins two distinct base vertices at a single
timestamp.  An assignment gives every base vertex at most one contiguous
activity interval, stored by its endpoints.
"""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Optional

Vertex = Hashable
Edge = tuple[Vertex, Vertex, int]
Interval = tuple[int, int]


class GraphError(ValueError):
    """Raised for malformed temporal graphs or assignments."""


@dataclass(frozen=True)
class TemporalGraph:
    """An immutable temporal graph.

    ``vertices`` fixes the base-vertex order; every edge is stored once as
    ``(u, v, t)`` with ``u`` before ``v`` in that order.
    """

    vertices: tuple
    horizon: int
    edges: frozenset = field(default_factory=frozenset)

    def __init__(self, vertices: Iterable[Vertex], horizon: int, edges: Iterable[Edge] = ()):
        vertices = tuple(vertices)
        if len(set(vertices)) != len(vertices):
            raise GraphError("duplicate base vertex")
        if not isinstance(horizon, int) or horizon < 1:
            raise GraphError(f"horizon must be a positive integer, got {horizon!r}")
        index = {v: i for i, v in enumerate(vertices)}
        normalized = set()
        for u, v, t in edges:
            if u not in index or v not in index:
                raise GraphError(f"edge ({u!r}, {v!r}, {t}) uses an unknown base vertex")
            if u == v:
                raise GraphError(f"self-loop on {u!r} at t={t}")
            if not 1 <= t <= horizon:
                raise GraphError(f"timestamp {t} outside [1, {horizon}]")
            if index[u] > index[v]:
                u, v = v, u
            normalized.add((u, v, t))
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "horizon", horizon)
        object.__setattr__(self, "edges", frozenset(normalized))

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def sorted_edges(self) -> tuple:
        """Edges ordered by (t, u, v) position; the canonical iteration order."""
        ix = self.index
        return tuple(sorted(self.edges, key=lambda e: (e[2], ix[e[0]], ix[e[1]])))

    @cached_property
    def neighbors(self) -> dict:
        """``(v, t) -> tuple of base vertices adjacent to v at t``."""
        adj: dict = {}
        for u, v, t in self.sorted_edges:
            adj.setdefault((u, t), []).append(v)
            adj.setdefault((v, t), []).append(u)
        return {key: tuple(vals) for key, vals in adj.items()}

    @property
    def n(self) -> int:
        return len(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self.index

    def has_edge(self, u, v, t) -> bool:
        ix = self.index
        if u not in ix or v not in ix:
            return False
        if ix[u] > ix[v]:
            u, v = v, u
        return (u, v, t) in self.edges

    def degree(self, v) -> int:
        return sum(len(self.neighbors.get((v, t), ())) for t in range(1, self.horizon + 1))

    def __repr__(self) -> str:
        return f"TemporalGraph(n={self.n}, T={self.horizon}, m={len(self.edges)})"


class TemporalAssignment(Mapping):
    """Immutable map from base vertex to an activity interval ``(lo, hi)``.

    Vertices without an entry have no active occurrence.  Contiguity holds by
    construction since only endpoints are stored.
    """

    __slots__ = ("_iv", "_hash")

    def __init__(self, intervals: Mapping | Iterable = ()):
        items = intervals.items() if isinstance(intervals, Mapping) else intervals
        iv = {}
        for v, (lo, hi) in items:
            lo, hi = int(lo), int(hi)
            if lo < 1 or lo > hi:
                raise GraphError(f"bad interval [{lo}, {hi}] for {v!r}")
            iv[v] = (lo, hi)
        self._iv = iv
        self._hash = None

    def __getitem__(self, v) -> Interval:
        return self._iv[v]

    def __iter__(self) -> Iterator:
        return iter(self._iv)

    def __len__(self) -> int:
        return len(self._iv)

    def __eq__(self, other) -> bool:
        if isinstance(other, TemporalAssignment):
            return self._iv == other._iv
        if isinstance(other, Mapping):
            return self._iv == dict(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._iv.items()))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{v}:[{lo},{hi}]" for v, (lo, hi) in self._iv.items())
        return f"{type(self).__name__}({{{body}}})"

    def active(self, v, t: int) -> bool:
        iv = self._iv.get(v)
        return iv is not None and iv[0] <= t <= iv[1]

    def span(self) -> int:
        return total_span(self)

    def occurrences(self) -> set:
        """All ``(v, t)`` pairs the assignment makes active."""
        return {(v, t) for v, (lo, hi) in self._iv.items() for t in range(lo, hi + 1)}

    def updated(self, changes: Mapping) -> "TemporalAssignment":
        iv = dict(self._iv)
        iv.update(changes)
        return TemporalAssignment(iv)

    def without(self, vertices: Iterable) -> "TemporalAssignment":
        drop = set(vertices)
        return TemporalAssignment({v: iv for v, iv in self._iv.items() if v not in drop})

    def restricted(self, vertices: Iterable) -> "TemporalAssignment":
        keep = set(vertices)
        return TemporalAssignment({v: iv for v, iv in self._iv.items() if v in keep})


class TemporalCover(TemporalAssignment):
    """An assignment known to be a temporal cover of some graph."""

    __slots__ = ()

    @classmethod
    def of(cls, graph: TemporalGraph, assignment: Mapping) -> "TemporalCover":
        """Validate ``assignment`` against ``graph`` and wrap it."""
        check = is_temporal_cover(graph, assignment)
        if not check:
            raise GraphError(f"not a temporal cover: {check.describe()}")
        ordered = {v: assignment[v] for v in graph.vertices}
        return cls(ordered)


class CoverCheck(NamedTuple):
    ok: bool
    uncovered_vertex: Optional[Vertex] = None
    uncovered_edge: Optional[Edge] = None

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "ok"
        if self.uncovered_edge is not None:
            u, v, t = self.uncovered_edge
            return f"edge {u}-{v} at t={t} is not covered"
        return f"base vertex {self.uncovered_vertex} has no active timestamp"


def span_of(assignment: Mapping, v) -> int:
    iv = assignment.get(v)
    return 0 if iv is None else iv[1] - iv[0]


def total_span(assignment: Mapping) -> int:
    return sum(hi - lo for lo, hi in assignment.values())


def is_temporal_cover(graph: TemporalGraph, assignment: Mapping) -> CoverCheck:
    """Check both cover conditions, returning the first violation found.

    Raises :class:`GraphError` if the assignment mentions unknown vertices or
    intervals outside ``[1, horizon]``.
    """
    for v, (lo, hi) in assignment.items():
        if v not in graph:
            raise GraphError(f"assignment mentions unknown base vertex {v!r}")
        if not 1 <= lo <= hi <= graph.horizon:
            raise GraphError(f"interval [{lo}, {hi}] of {v!r} outside [1, {graph.horizon}]")
    for v in graph.vertices:
        if v not in assignment:
            return CoverCheck(False, uncovered_vertex=v)
    for u, v, t in graph.sorted_edges:
        lu, hu = assignment[u]
        lv, hv = assignment[v]
        if not (lu <= t <= hu or lv <= t <= hv):
            return CoverCheck(False, uncovered_edge=(u, v, t))
    return CoverCheck(True)


def pad_dummy_timestamps(graph: TemporalGraph) -> tuple[TemporalGraph, int]:
    """Add an edgeless timestamp before and after the horizon.

    Always pads, so timestamps ``1`` and ``T`` of the result are edgeless.
    Returns the padded graph and the offset (1) to undo with
    :func:`unpad_assignment`.
    """
    offset = 1
    edges = [(u, v, t + offset) for u, v, t in graph.edges]
    return TemporalGraph(graph.vertices, graph.horizon + 2, edges), offset


def unpad_assignment(assignment: Mapping, offset: int, horizon: int) -> TemporalAssignment:
    """Map an assignment of a padded graph back onto ``[1, horizon]``.

    Intervals are clipped to the original timestamps first, which never
    uncovers an edge nor raises the span.  A vertex active only at a dummy
    timestamp keeps a single occurrence at the nearest real one.
    """
    first, last = 1 + offset, horizon + offset
    out = {}
    for v, (lo, hi) in assignment.items():
        a, b = max(lo, first), min(hi, last)
        if a > b:
            a = b = min(max(lo, first), last)
        out[v] = (a - offset, b - offset)
    return type(assignment)(out) if isinstance(assignment, TemporalAssignment) else TemporalAssignment(out)


def shift_assignment(assignment: Mapping, offset: int) -> TemporalAssignment:
    return TemporalAssignment({v: (lo + offset, hi + offset) for v, (lo, hi) in assignment.items()})


def induced_subgraph(graph: TemporalGraph, keep: Iterable) -> TemporalGraph:
    """Subgraph on the base vertices in ``keep`` over the same time domain.

    Vertex order follows ``graph.vertices``.
    """
    keep = set(keep)
    unknown = [v for v in keep if v not in graph]
    if unknown:
        raise GraphError(f"unknown base vertices: {unknown!r}")
    vertices = [v for v in graph.vertices if v in keep]
    edges = [e for e in graph.edges if e[0] in keep and e[1] in keep]
    return TemporalGraph(vertices, graph.horizon, edges)


def edgeless_ends(graph: TemporalGraph) -> bool:
    """True if no edge sits at timestamp 1 or at the horizon."""
    return all(t not in (1, graph.horizon) for _, _, t in graph.edges)
