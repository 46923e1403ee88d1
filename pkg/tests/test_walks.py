from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest

from sepgap.graphs import WeightedGraph
from sepgap.walks import (
    Walk,
    doubled_tree_walk,
    enumerate_walks,
    extend_walk,
    is_valid_walk,
)

H = Fraction(1, 2)

TRIANGLE = WeightedGraph(3, {(0, 1): 1, (0, 2): 1, (1, 2): 1})


def cycle_graph(n: int) -> WeightedGraph:
    return WeightedGraph(n, {(i, (i + 1) % n) if i + 1 < n else (0, n - 1): 1
                             for i in range(n)})


def test_cycle_tour_is_valid():
    g = cycle_graph(6)
    w = Walk.from_dict(6, {e: 1 for e in g.edges})
    ok, why = is_valid_walk(g, w)
    assert ok, why
    assert w.is_tour()


def test_doubled_spanning_tree_is_valid(prism):
    g = prism.support()
    w = doubled_tree_walk(g)
    ok, why = is_valid_walk(g, w)
    assert ok, why
    assert all(m == 2 for _, m in w.mult)
    assert len(w.mult) == g.n - 1


def test_uncovered_node_is_reported(prism):
    g = prism.support()
    # double the triangle 0-1-2: nodes 3,4,5 unvisited
    w = {(0, 1): 2, (0, 2): 2, (1, 2): 2}
    ok, why = is_valid_walk(g, w)
    assert not ok
    assert why.reason == "node not visited"
    assert why.witness in (3, 4, 5)


def test_odd_degree_is_reported():
    ok, why = is_valid_walk(TRIANGLE, {(0, 1): 1, (0, 2): 1, (1, 2): 2})
    assert not ok
    assert why.reason == "odd multiplicity degree"


def test_disconnected_support_is_reported():
    g = WeightedGraph(6, {(0, 1): 1, (1, 2): 1, (0, 2): 1,
                          (3, 4): 1, (4, 5): 1, (3, 5): 1,
                          (0, 3): 1, (1, 4): 1, (2, 5): 1})
    w = {(0, 1): 1, (1, 2): 1, (0, 2): 1, (3, 4): 1, (4, 5): 1, (3, 5): 1}
    ok, why = is_valid_walk(g, w)
    assert not ok
    assert why.reason == "used edges are disconnected"


def test_walk_off_graph_edge_rejected():
    ok, why = is_valid_walk(TRIANGLE, {(0, 1): 2, (1, 2): 2})
    assert ok  # spanning, even, connected: 0-1 and 1-2 doubled cover all
    g = WeightedGraph(3, {(0, 1): 1, (1, 2): 1})
    ok, why = is_valid_walk(g, {(0, 2): 2, (0, 1): 2, (1, 2): 2})
    assert not ok
    assert why.reason == "edge not in host graph"


def test_triangle_walk_set_matches_brute_force():
    # independent brute force over all 27 multiplicity vectors
    expected = set()
    for m01, m02, m12 in product((0, 1, 2), repeat=3):
        mult = {e: m for e, m in [((0, 1), m01), ((0, 2), m02), ((1, 2), m12)] if m}
        ok, _ = is_valid_walk(TRIANGLE, mult)
        if ok:
            expected.add((m01, m02, m12))
    assert expected == {(1, 1, 1), (2, 2, 0), (2, 0, 2), (0, 2, 2), (2, 2, 2)}
    got = {
        tuple(w.as_dict().get(e, 0) for e in TRIANGLE.edges)
        for w in enumerate_walks(TRIANGLE)
    }
    assert got == expected


def test_single_edge_graph_has_only_the_doubled_walk():
    g = WeightedGraph(2, {(0, 1): 1})
    walks = enumerate_walks(g)
    assert [w.as_dict() for w in walks] == [{(0, 1): 2}]


def test_prism_walk_count_regression(prism):
    # frozen from the exhaustive 3^9 enumeration
    assert len(enumerate_walks(prism.support())) == 461


def test_enumeration_rejects_large_graphs():
    g = WeightedGraph(8, {(i, j): 1 for i in range(8) for j in range(i + 1, 8)
                          if i < 5 or j - i == 1})
    assert len(g.edges) > 14
    with pytest.raises(ValueError, match="too large"):
        enumerate_walks(g)


def test_enumeration_is_duplicate_free_and_sorted(prism):
    walks = enumerate_walks(prism.support())
    keys = [w.mult for w in walks]
    assert len(set(keys)) == len(keys)


def test_all_tours_of_prism_are_walks(prism):
    g = prism.support()
    # the prism graph has hamiltonian cycles; every one is a valid walk
    count = 0
    for w in enumerate_walks(g):
        if w.is_tour():
            ok, _ = is_valid_walk(g, w)
            assert ok
            assert all(m <= 1 for _, m in w.mult)
            count += 1
    assert count > 0


# --- liftings --------------------------------------------------------------

def path_graph_edges(nodes):
    return [tuple(sorted(p)) for p in zip(nodes, nodes[1:])]


def test_extend_single_crossing_d2():
    # 6-cycle tour crossing (0, 1) once; expand (0, 1) with two nodes 6, 7
    g = cycle_graph(6)
    w = Walk.from_dict(6, {e: 1 for e in g.edges})
    lifted = extend_walk(w, (0, 1), 2, 1)
    assert lifted.n == 8
    assert lifted.multiplicity((0, 1)) == 0
    for e in path_graph_edges([0, 6, 7, 1]):
        assert lifted.multiplicity(e) == 1
    # the rest of the tour is untouched
    assert lifted.multiplicity((1, 2)) == 1


def test_extend_double_crossing():
    g = WeightedGraph(3, {(0, 1): 1, (0, 2): 1, (1, 2): 1})
    w = Walk.from_dict(3, {(0, 1): 2, (0, 2): 2})  # valid: spans, even
    lifted = extend_walk(w, (0, 1), 3, 2)
    assert lifted.multiplicity((0, 1)) == 0
    for e in path_graph_edges([0, 3, 4, 5, 1]):
        assert lifted.multiplicity(e) == 2
    assert lifted.multiplicity((0, 2)) == 2


def test_extend_skipping_walk_matches_deviation_geometry(prism):
    g = prism.support()
    skip = next(w for w in enumerate_walks(g) if w.multiplicity((0, 3)) == 0)
    d = 2
    path_edges = path_graph_edges([0, 6, 7, 3])
    for k in range(d + 1):
        lifted = extend_walk(skip, (0, 3), d, 0, k)
        ok, why = is_valid_walk(
            WeightedGraph(8, {**{e: Fraction(1) for e in g.edges},
                              **{e: Fraction(1) for e in path_edges}}),
            lifted,
        )
        assert ok, why
        mults = [lifted.multiplicity(e) for e in path_edges]
        # doubled on both sides of exactly one untouched gap edge
        assert mults.count(0) == 1
        assert mults.index(0) == k
        assert all(m in (0, 2) for m in mults)


def test_extend_d0_is_identity(prism):
    g = prism.support()
    for w in enumerate_walks(g)[:20]:
        m = w.multiplicity((1, 4))
        assert extend_walk(w, (1, 4), 0, m) == w


def test_extend_class_mismatch_rejected(prism):
    g = prism.support()
    w = doubled_tree_walk(g)
    m = w.multiplicity((0, 3))
    with pytest.raises(ValueError, match="class mismatch"):
        extend_walk(w, (0, 3), 1, (m + 1) % 3)


def test_every_lift_is_a_valid_walk(prism):
    g = prism.support()
    d = 1
    expanded_edges = {**{e: Fraction(1) for e in g.edges}}
    del expanded_edges[(0, 3)]
    for e in path_graph_edges([0, 6, 3]):
        expanded_edges[e] = Fraction(1)
    host = WeightedGraph(7, expanded_edges)
    for w in enumerate_walks(g):
        m = w.multiplicity((0, 3))
        variants = (
            [extend_walk(w, (0, 3), d, 0, k) for k in range(d + 1)]
            if m == 0 else [extend_walk(w, (0, 3), d, m)]
        )
        for lifted in variants:
            ok, why = is_valid_walk(host, lifted)
            assert ok, (why, w)
