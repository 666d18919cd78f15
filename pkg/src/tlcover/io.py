"""Text formats for temporal graphs, covers and pair-cut instances.

Temporal graph::

    # comment
    p tgc <n> <T>
    v <name>            (optional; declares an isolated or early vertex)
    e <u> <v> <t>

Vertices are registered in order of first appearance; if fewer than ``n``
names appear, the rest are filled with fresh numeric names.

Cover (JSON)::

    {"span": 3, "intervals": {"v": [5, 5], "u": [2, 4]}}

Pair cut::

    vdpc <nVertices> <nArcs> <nPairs> <k>      (or ``cdpc``)
    a <u> <v>           undeletable arc (any arc for vdpc)
    d <u> <v>           deletable arc (cdpc only)
    p <u> <v>           forbidden pair
    s <u>               source
"""

from __future__ import annotations

import json
import random
from typing import Mapping

from .core import GraphError, TemporalAssignment, TemporalGraph, total_span
from .paircut import CdpcInstance, InstanceError, VdpcInstance


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _int(token: str, no: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {token!r}", no) from None


def _fill_names(names: list, n: int) -> list:
    taken = set(names)
    i = 1
    while len(names) < n:
        if str(i) not in taken:
            names.append(str(i))
        i += 1
    return names


def parse_temporal_graph(text: str) -> TemporalGraph:
    header = None
    names: list[str] = []
    known: set[str] = set()
    edges: dict = {}

    def register(name: str, no: int) -> None:
        if name not in known:
            if len(names) == header[0]:
                raise ParseError(f"more than {header[0]} base vertices", no)
            known.add(name)
            names.append(name)

    for no, tok in _lines(text):
        kind = tok[0]
        if kind == "p":
            if header is not None:
                raise ParseError("duplicate header", no)
            if len(tok) != 4 or tok[1] != "tgc":
                raise ParseError("malformed header, expected 'p tgc <n> <T>'", no)
            n, T = _int(tok[2], no, "n"), _int(tok[3], no, "T")
            if n < 0 or T < 1:
                raise ParseError("malformed header, need n >= 0 and T >= 1", no)
            header = (n, T)
            continue
        if header is None:
            raise ParseError("missing header 'p tgc <n> <T>' before data", no)
        if kind == "v":
            if len(tok) != 2:
                raise ParseError("expected 'v <name>'", no)
            register(tok[1], no)
        elif kind == "e":
            if len(tok) != 4:
                raise ParseError("expected 'e <u> <v> <t>'", no)
            u, v, t = tok[1], tok[2], _int(tok[3], no, "timestamp")
            if u == v:
                raise ParseError(f"self-loop on {u!r}", no)
            if not 1 <= t <= header[1]:
                raise ParseError(f"timestamp {t} outside [1, {header[1]}]", no)
            register(u, no)
            register(v, no)
            key = (frozenset((u, v)), t)
            if key in edges:
                raise ParseError(f"duplicate edge {u}-{v} at t={t} (first on line {edges[key]})", no)
            edges[key] = no
        else:
            raise ParseError(f"unknown line type {kind!r}", no)
    if header is None:
        raise ParseError("missing header 'p tgc <n> <T>'")
    vertices = _fill_names(names, header[0])
    return TemporalGraph(vertices, header[1], [(*pair, t) for pair, t in edges])


def format_temporal_graph(graph: TemporalGraph) -> str:
    out = [f"p tgc {graph.n} {graph.horizon}"]
    # declare every vertex so first-appearance order survives a round trip
    out += [f"v {v}" for v in graph.vertices]
    out += [f"e {u} {v} {t}" for u, v, t in graph.sorted_edges]
    return "\n".join(out) + "\n"


def serialize_cover(cover: Mapping) -> str:
    rows = [f"    {json.dumps(str(v))}: [{lo}, {hi}]" for v, (lo, hi) in cover.items()]
    body = ",\n".join(rows)
    intervals = "{\n" + body + "\n  }" if rows else "{}"
    return f'{{\n  "span": {total_span(cover)},\n  "intervals": {intervals}\n}}\n'


def parse_cover(text: str) -> TemporalAssignment:
    """Inverse of :func:`serialize_cover`; the ``span`` field is not trusted."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"cover is not valid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(doc, dict) or not isinstance(doc.get("intervals"), dict):
        raise ParseError("cover document needs an 'intervals' object")
    intervals = {}
    for v, iv in doc["intervals"].items():
        if not (isinstance(iv, list) and len(iv) == 2 and all(isinstance(x, int) for x in iv)):
            raise ParseError(f"interval of {v!r} must be [lo, hi]")
        intervals[v] = tuple(iv)
    try:
        return TemporalAssignment(intervals)
    except GraphError as exc:
        raise ParseError(str(exc)) from None


def declared_span(text: str):
    doc = json.loads(text)
    return doc.get("span") if isinstance(doc, dict) else None


def generate_instance(n: int, horizon: int, p: float, seed: int) -> TemporalGraph:
    """Random temporal graph: each of the n(n-1)/2 * T possible edges appears
    independently with probability ``p``."""
    if n < 1 or horizon < 1 or not 0.0 <= p <= 1.0:
        raise ValueError("need n >= 1, T >= 1 and 0 <= p <= 1")
    rng = random.Random(seed)
    names = [f"v{i}" for i in range(1, n + 1)]
    edges = [
        (names[i], names[j], t)
        for i in range(n)
        for j in range(i + 1, n)
        for t in range(1, horizon + 1)
        if rng.random() < p
    ]
    return TemporalGraph(names, horizon, edges)


def parse_paircut(text: str):
    """Parse a pair-cut instance; returns a :class:`CdpcInstance` for a
    ``cdpc`` header and a :class:`VdpcInstance` for ``vdpc``."""
    header = None
    names: list[str] = []
    known: set[str] = set()
    arcs, deletable, pairs = [], [], []
    source = None

    def register(name: str) -> str:
        if name not in known:
            known.add(name)
            names.append(name)
        return name

    for no, tok in _lines(text):
        kind = tok[0]
        if kind in ("vdpc", "cdpc"):
            if header is not None:
                raise ParseError("duplicate header", no)
            if len(tok) != 5:
                raise ParseError(f"malformed header, expected '{kind} <nV> <nArcs> <nPairs> <k>'", no)
            nums = [_int(x, no, "header field") for x in tok[1:]]
            if min(nums) < 0:
                raise ParseError("header fields must be non-negative", no)
            header = (kind, *nums)
            continue
        if header is None:
            raise ParseError("missing 'vdpc'/'cdpc' header before data", no)
        if kind in ("a", "d", "p"):
            if len(tok) != 3:
                raise ParseError(f"expected '{kind} <u> <v>'", no)
            u, v = register(tok[1]), register(tok[2])
            if kind == "p":
                if u == v:
                    raise ParseError(f"degenerate pair {{{u}, {u}}}", no)
                pairs.append((u, v))
            elif kind == "d":
                if header[0] != "cdpc":
                    raise ParseError("deletable arcs need a 'cdpc' header", no)
                arcs.append((u, v))
                deletable.append((u, v))
            else:
                arcs.append((u, v))
        elif kind == "s":
            if len(tok) != 2:
                raise ParseError("expected 's <u>'", no)
            if source is not None:
                raise ParseError("duplicate source line", no)
            source = register(tok[1])
        else:
            raise ParseError(f"unknown line type {kind!r}", no)
    if header is None:
        raise ParseError("missing 'vdpc'/'cdpc' header")
    kind, n_vertices, n_arcs, n_pairs, k = header
    if source is None:
        raise ParseError("missing source line 's <u>'")
    if len(names) > n_vertices:
        raise ParseError(f"{len(names)} vertices named but header declares {n_vertices}")
    if len(arcs) != n_arcs:
        raise ParseError(f"header declares {n_arcs} arcs, found {len(arcs)}")
    if len(pairs) != n_pairs:
        raise ParseError(f"header declares {n_pairs} pairs, found {len(pairs)}")
    vertices = _fill_names(names, n_vertices)
    try:
        if kind == "cdpc":
            return CdpcInstance(vertices, arcs, source, pairs, deletable, k)
        return VdpcInstance(vertices, arcs, source, pairs, k)
    except InstanceError as exc:
        raise ParseError(str(exc)) from None


def format_paircut(instance) -> str:
    is_c = isinstance(instance, CdpcInstance)
    kind = "cdpc" if is_c else "vdpc"
    out = [f"{kind} {len(instance.vertices)} {len(instance.arcs)} {len(instance.pairs)} {instance.budget}"]
    for u, v in instance.arcs:
        tag = "d" if is_c and (u, v) in instance.deletable else "a"
        out.append(f"{tag} {u} {v}")
    out += [f"p {a} {b}" for a, b in instance.pairs]
    out.append(f"s {instance.source}")
    return "\n".join(out) + "\n"
