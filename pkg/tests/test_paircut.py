import random
from array import array

import pytest

from conftest import random_cdpc
from tlcover.oracle import brute_force_cdpc, brute_force_vdpc
from tlcover.paircut import (
    NEW_SOURCE,
    ArcVertex,
    CdpcInstance,
    Copy,
    InstanceError,
    SearchStats,
    VdpcInstance,
    cdpc_to_vdpc,
    reachable_from_source,
    solve_cdpc,
    solve_vdpc,
)
from tlcover.paircut import _kernels

PATH = CdpcInstance(["s", "a", "b"], [("s", "a"), ("a", "b")], "s", deletable=[("a", "b")])


@pytest.mark.parametrize("kw, expected", [
    ({}, {"s", "a", "b"}),
    ({"removed_vertices": ["a"]}, {"s"}),
    ({"removed_arcs": [("a", "b")]}, {"s", "a"}),
])
def test_reachable_from_source(kw, expected):
    assert reachable_from_source(PATH, **kw) == expected
    assert PATH.reachable(**kw) == expected


@pytest.mark.parametrize("args, msg", [
    ((["s"], [], "s", [("s", "s")]), "pair"),
    ((["s"], [("s", "q")], "s", []), "unknown"),
    ((["s"], [], "q", []), "source"),
])
def test_instance_validation(args, msg):
    with pytest.raises(InstanceError, match=msg):
        VdpcInstance(*args)


def test_cdpc_validation():
    with pytest.raises(InstanceError):
        CdpcInstance(["s", "a"], [], "s", [], [("s", "a")])
    with pytest.raises(InstanceError):
        CdpcInstance(["s", "a"], [("s", "a")], "s", [], [], -1)


def test_pairs_are_unordered_and_deduplicated():
    inst = VdpcInstance(["s", "a", "b"], [], "s", [("b", "a"), ("a", "b")])
    assert inst.pairs == (("a", "b"),)


# -- arc deletion ------------------------------------------------------------------

def test_solve_cdpc_no_pairs():
    assert solve_cdpc(PATH) == frozenset()


def _fork(k):
    return CdpcInstance(["s", "a", "b"], [("s", "a"), ("s", "b")], "s", [("a", "b")], [("s", "a")], k)


def test_solve_cdpc_fork():
    assert brute_force_cdpc(_fork(1)) == {("s", "a")}
    assert solve_cdpc(_fork(1)) == {("s", "a")}


def test_solve_cdpc_fork_no_budget():
    assert brute_force_cdpc(_fork(0)) is None
    assert solve_cdpc(_fork(0)) is None


def test_solve_cdpc_pair_with_source():
    inst = CdpcInstance(["s", "a", "b"], [("s", "a"), ("a", "b")], "s", [("s", "b")],
                        [("a", "b")], 1)
    assert solve_cdpc(inst) == {("a", "b")}


# -- reduction -----------------------------------------------------------------------

def test_reduction_deletable_arc():
    inst = CdpcInstance(["s", "v"], [("s", "v")], "s", [], [("s", "v")], 1)
    red, arc_map = cdpc_to_vdpc(inst)
    m = ArcVertex("s", "v", 1)
    s1, s2, v1, v2 = Copy("s", 1), Copy("s", 2), Copy("v", 1), Copy("v", 2)
    assert set(red.vertices) == {NEW_SOURCE, s1, s2, v1, v2, m}
    assert set(red.arcs) == {(NEW_SOURCE, s1), (NEW_SOURCE, s2), (s1, m), (s2, m), (m, v1), (m, v2)}
    assert red.source is NEW_SOURCE and red.budget == 1
    assert arc_map == {m: ("s", "v")}


def test_reduction_undeletable_arc():
    inst = CdpcInstance(["s", "v"], [("s", "v")], "s", [], [], 1)
    red, arc_map = cdpc_to_vdpc(inst)
    assert len(red.vertices) == 7
    mids = [x for x in red.vertices if isinstance(x, ArcVertex)]
    assert len(mids) == 2 and arc_map == {}
    for m in mids:
        assert {a for a, b in red.arcs if b == m} == {Copy("s", 1), Copy("s", 2)}
        assert {b for a, b in red.arcs if a == m} == {Copy("v", 1), Copy("v", 2)}


def test_reduction_pairs():
    inst = CdpcInstance(["s", "u", "v"], [], "s", [("u", "v")], [], 1)
    red, _ = cdpc_to_vdpc(inst)
    assert set(red.pairs) == {(Copy("u", i), Copy("v", j)) for i in (1, 2) for j in (1, 2)}


# -- vertex deletion -----------------------------------------------------------------

def test_solve_vdpc_examples():
    assert solve_vdpc(VdpcInstance(["s", "a"], [("s", "a")], "s")) == frozenset()
    star = VdpcInstance(["s", "x1", "x2", "x3"], [("s", "x1"), ("s", "x2"), ("s", "x3")], "s",
                        [("x1", "x2"), ("x2", "x3")], 1)
    assert solve_vdpc(star) == {"x2"}
    path = VdpcInstance(["s", "a", "b"], [("s", "a"), ("a", "b")], "s", [("s", "b")], 1)
    assert solve_vdpc(path) in ({"a"}, {"b"})
    assert solve_vdpc(path.with_budget(0)) is None


def test_solve_vdpc_never_removes_source():
    inst = VdpcInstance(["s", "a"], [("s", "a")], "s", [("s", "a")], 3)
    assert solve_vdpc(inst) == {"a"}


def test_search_stats_count_nodes():
    stats = SearchStats()
    star = VdpcInstance(["s", "x1", "x2", "x3"], [("s", "x1"), ("s", "x2"), ("s", "x3")], "s",
                        [("x1", "x2"), ("x2", "x3")], 1)
    solve_vdpc(star, stats=stats)
    assert stats.nodes >= 1


@pytest.mark.parametrize("seed", range(150))
def test_cdpc_differential(seed):
    inst = random_cdpc(random.Random(seed))
    ref = brute_force_cdpc(inst)
    got = solve_cdpc(inst)
    assert (got is None) == (ref is None)
    if got is not None:
        assert got <= inst.deletable and len(got) <= inst.budget
        assert inst.is_solution(got)
        reach = reachable_from_source(inst, removed_arcs=got)
        assert all(not (a in reach and b in reach) for a, b in inst.pairs)
    best = solve_cdpc(inst, minimum=True)
    assert (best is None) == (ref is None)
    if best is not None:
        assert len(best) == len(ref)


@pytest.mark.parametrize("seed", range(80))
def test_reduced_instance_differential(seed):
    inst = random_cdpc(random.Random(seed), max_vertices=4, max_deletable=4, max_budget=2)
    red, arc_map = cdpc_to_vdpc(inst)
    got = solve_vdpc(red)
    ref = brute_force_vdpc(red)
    assert (got is None) == (ref is None) == (brute_force_cdpc(inst) is None)
    if got is not None:
        assert red.is_solution(got)
        # copy robustness: only deletable-arc vertices are ever removed
        assert all(r in arc_map for r in got)
        assert inst.is_solution({arc_map[r] for r in got})


@pytest.mark.parametrize("seed", range(100))
def test_vdpc_differential(seed):
    rng = random.Random(5000 + seed)
    n = rng.randint(2, 8)
    names = ["s"] + [f"y{i}" for i in range(1, n)]
    arcs = [(a, b) for a in names for b in names if a != b and rng.random() < 0.3]
    all_pairs = [(a, b) for i, a in enumerate(names) for b in names[i + 1:]]
    pairs = rng.sample(all_pairs, min(len(all_pairs), rng.randint(0, 5)))
    inst = VdpcInstance(names, arcs, "s", pairs, rng.randint(0, 3))
    ref = brute_force_vdpc(inst)
    got = solve_vdpc(inst, minimum=True)
    assert (got is None) == (ref is None)
    if got is not None:
        assert inst.is_solution(got) and "s" not in got
        assert len(got) == len(ref)


@pytest.mark.parametrize("seed", range(60))
def test_cdpc_budget_monotone(seed):
    inst = random_cdpc(random.Random(9000 + seed), max_budget=2)
    if solve_cdpc(inst) is not None:
        assert solve_cdpc(inst.with_budget(inst.budget + 1)) is not None


# -- kernel backends ------------------------------------------------------------------

def _random_csr(rng, n, p):
    indptr, targets = [0], []
    for v in range(n):
        targets += [w for w in range(n) if w != v and rng.random() < p]
        indptr.append(len(targets))
    return array("i", indptr), array("i", targets)


@pytest.mark.skipif(len(_kernels.available()) < 2, reason="compiled kernels not built")
@pytest.mark.parametrize("seed", range(20))
def test_backends_agree(seed):
    rng = random.Random(seed)
    py, cy = _kernels.backend_module("python"), _kernels.backend_module("cython")
    n = rng.randint(2, 30)
    indptr, targets = _random_csr(rng, n, 0.15)
    removed = bytearray(rng.random() < 0.2 for _ in range(n))
    removed[0] = 0
    assert py.reach(indptr, targets, 0, removed) == cy.reach(indptr, targets, 0, removed)
    pa = array("i", [rng.randrange(n) for _ in range(5)])
    pb = array("i", [rng.randrange(n) for _ in range(5)])
    mask = bytearray(rng.random() < 0.5 for _ in range(n))
    assert py.first_full_pair(mask, pa, pb) == cy.first_full_pair(mask, pa, pb)


@pytest.mark.skipif(len(_kernels.available()) < 2, reason="compiled kernels not built")
@pytest.mark.parametrize("seed", range(30))
def test_solver_identical_under_both_backends(seed):
    inst = random_cdpc(random.Random(700 + seed))
    red, _ = cdpc_to_vdpc(inst)
    results = {}
    try:
        for name in ("python", "cython"):
            _kernels.set_backend(name)
            stats = SearchStats()
            results[name] = (solve_vdpc(red, stats=stats), stats)
    finally:
        _kernels.set_backend("cython")
    assert results["python"] == results["cython"]
