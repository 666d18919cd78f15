import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tlcover.core import (
    GraphError,
    TemporalAssignment,
    TemporalCover,
    TemporalGraph,
    edgeless_ends,
    induced_subgraph,
    is_temporal_cover,
    pad_dummy_timestamps,
    shift_assignment,
    span_of,
    total_span,
    unpad_assignment,
)


def test_graph_normalizes_edge_orientation():
    g = TemporalGraph(["a", "b"], 2, [("b", "a", 1), ("a", "b", 1)])
    assert g.edges == frozenset({("a", "b", 1)})
    assert g.has_edge("b", "a", 1) and not g.has_edge("a", "b", 2)


@pytest.mark.parametrize("edges, msg", [
    ([("a", "a", 1)], "self-loop"),
    ([("a", "b", 0)], "outside"),
    ([("a", "b", 3)], "outside"),
    ([("a", "x", 1)], "unknown"),
])
def test_graph_rejects_bad_edges(edges, msg):
    with pytest.raises(GraphError, match=msg):
        TemporalGraph(["a", "b"], 2, edges)


def test_graph_rejects_bad_horizon_and_duplicates():
    with pytest.raises(GraphError):
        TemporalGraph(["a"], 0)
    with pytest.raises(GraphError):
        TemporalGraph(["a", "a"], 1)


def test_neighbors_index(fig1):
    assert set(fig1.neighbors[("w", 2)]) == {"v", "u", "z"}
    assert fig1.degree("w") == 7
    assert ("w", 1) not in fig1.neighbors


@pytest.mark.parametrize("cover, v, expected", [
    ({"v": (5, 5), "u": (2, 4)}, "u", 2),
    ({"v": (5, 5), "u": (2, 4)}, "v", 0),
    ({"v": (5, 5)}, "z", 0),
])
def test_span_of(cover, v, expected):
    assert span_of(cover, v) == expected


def test_total_span(fig1_cover):
    assert total_span(fig1_cover) == 3
    assert total_span({}) == 0
    assert total_span({"a": (1, 4)}) == 3


def test_assignment_rejects_reversed_interval():
    with pytest.raises(GraphError):
        TemporalAssignment({"a": (3, 2)})
    with pytest.raises(GraphError):
        TemporalAssignment({"a": (0, 2)})


def test_assignment_helpers():
    x = TemporalAssignment({"a": (1, 2), "b": (3, 3)})
    assert x.active("a", 2) and not x.active("a", 3) and not x.active("c", 1)
    assert x.occurrences() == {("a", 1), ("a", 2), ("b", 3)}
    assert x.updated({"b": (2, 4)})["b"] == (2, 4)
    assert set(x.without(["a"])) == {"b"}
    assert set(x.restricted(["a", "z"])) == {"a"}
    assert x == {"a": (1, 2), "b": (3, 3)}
    assert hash(x) == hash(TemporalAssignment({"b": (3, 3), "a": (1, 2)}))


def test_fig1_cover_is_valid(fig1, fig1_cover):
    check = is_temporal_cover(fig1, fig1_cover)
    assert check and check.describe() == "ok"


def test_missing_vertex_is_reported(fig1, fig1_cover):
    check = is_temporal_cover(fig1, fig1_cover.without(["w"]))
    assert not check
    assert check.uncovered_vertex == "w"


def test_uncovered_edge_is_reported(fig1, fig1_cover):
    # v only at 4 leaves v-w at t=5 uncovered
    check = is_temporal_cover(fig1, fig1_cover.updated({"v": (4, 4)}))
    assert not check and check.uncovered_edge == ("v", "w", 5)
    assert "t=5" in check.describe()


def test_edgeless_graph_any_touching_assignment():
    g = TemporalGraph(["a", "b"], 3)
    assert is_temporal_cover(g, {"a": (1, 3), "b": (2, 2)})


@pytest.mark.parametrize("bad", [{"x": (1, 1)}, {"v": (0, 1)}, {"v": (6, 7)}])
def test_cover_check_rejects_out_of_range(fig1, bad):
    with pytest.raises(GraphError):
        is_temporal_cover(fig1, bad)


def test_temporal_cover_of_validates(fig1, fig1_cover):
    cover = TemporalCover.of(fig1, fig1_cover)
    assert list(cover) == ["v", "u", "z", "w"]
    with pytest.raises(GraphError):
        TemporalCover.of(fig1, fig1_cover.without(["z"]))


def test_pad_single_edge():
    g = TemporalGraph(["u", "v"], 1, [("u", "v", 1)])
    padded, offset = pad_dummy_timestamps(g)
    assert offset == 1 and padded.horizon == 3
    assert padded.edges == frozenset({("u", "v", 2)})
    assert edgeless_ends(padded) and not edgeless_ends(g)


def test_pad_fig1_always_pads(fig1):
    assert edgeless_ends(fig1)
    padded, offset = pad_dummy_timestamps(fig1)
    assert padded.horizon == 8
    assert padded.edges == {(u, v, t + 1) for u, v, t in fig1.edges}


def test_unpad_fig1_cover(fig1, fig1_cover):
    padded, offset = pad_dummy_timestamps(fig1)
    lifted = shift_assignment(fig1_cover, offset)
    assert is_temporal_cover(padded, lifted)
    back = unpad_assignment(lifted, offset, fig1.horizon)
    assert back == fig1_cover and total_span(back) == 3


def test_unpad_clips_dummy_timestamps():
    back = unpad_assignment({"a": (1, 3), "b": (1, 1), "c": (5, 5)}, 1, 3)
    assert back == {"a": (1, 2), "b": (1, 1), "c": (3, 3)}


def test_induced_subgraph_is_fig2_graph(fig1):
    sub = induced_subgraph(fig1, {"v", "u", "z"})
    assert sub.vertices == ("v", "u", "z") and sub.horizon == 6
    assert sub.edges == {e for e in fig1.edges if "w" not in e}
    assert len(sub.edges) == 6


def test_induced_subgraph_trivial_cases(fig1):
    assert induced_subgraph(fig1, fig1.vertices) == fig1
    assert induced_subgraph(fig1, {"z"}).edges == frozenset()
    with pytest.raises(GraphError):
        induced_subgraph(fig1, {"q"})


# -- properties -----------------------------------------------------------------

@st.composite
def graph_and_cover(draw):
    n = draw(st.integers(1, 4))
    T = draw(st.integers(1, 5))
    names = [f"x{i}" for i in range(n)]
    slots = [(names[i], names[j], t) for i in range(n) for j in range(i + 1, n) for t in range(1, T + 1)]
    edges = draw(st.lists(st.sampled_from(slots), unique=True)) if slots else []
    g = TemporalGraph(names, T, edges)
    # the all-active assignment is always a cover; shrink intervals at random
    iv = {}
    for v in names:
        lo = draw(st.integers(1, T))
        hi = draw(st.integers(lo, T))
        iv[v] = (lo, hi)
    return g, TemporalAssignment(iv)


@given(graph_and_cover())
def test_span_bounds(gc):
    g, x = gc
    for v in g.vertices:
        assert 0 <= span_of(x, v) <= g.horizon - 1
    assert total_span(x) == sum(hi - lo for lo, hi in x.values())


@given(graph_and_cover(), st.data())
def test_cover_monotone_under_extension(gc, data):
    g, x = gc
    full = TemporalAssignment({v: (1, g.horizon) for v in g.vertices})
    assert is_temporal_cover(g, full)
    if not is_temporal_cover(g, x):
        return
    v = data.draw(st.sampled_from(g.vertices))
    lo, hi = x[v]
    lo2 = data.draw(st.integers(1, lo))
    hi2 = data.draw(st.integers(hi, g.horizon))
    assert is_temporal_cover(g, x.updated({v: (lo2, hi2)}))


@given(graph_and_cover())
def test_adding_singleton_keeps_span(gc):
    g, x = gc
    extra = x.updated({"fresh": (1, 1)})
    assert total_span(extra) == total_span(x)


@settings(max_examples=200)
@given(graph_and_cover())
def test_pad_round_trip(gc):
    g, x = gc
    padded, offset = pad_dummy_timestamps(g)
    lifted = shift_assignment(x, offset)
    assert bool(is_temporal_cover(padded, lifted)) == bool(is_temporal_cover(g, x))
    back = unpad_assignment(lifted, offset, g.horizon)
    assert back == x and total_span(back) == total_span(x)
