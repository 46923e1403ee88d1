from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import pytest

from sepgap.canonical import canonical_form
from sepgap.graphs import SepPoint, edge
from sepgap.mincut import global_min_cut
from sepgap.polytope import (
    NotOneEdgeError,
    bb_move,
    check_sep_feasible,
    contract_to_ancestor,
    expand_one_edge,
    is_vertex,
    metric_completion,
)
from sepgap.tsp import all_tours, tour_edges

H = Fraction(1, 2)


def tour_point(seq) -> SepPoint:
    n = len(seq)
    return SepPoint(n, {e: Fraction(1) for e in tour_edges(tuple(seq))})


# --- feasibility -----------------------------------------------------------

def test_tour_vectors_are_feasible():
    for n in (3, 5, 6, 8):
        assert check_sep_feasible(tour_point(range(n))).feasible


def test_prism_is_feasible(prism):
    assert check_sep_feasible(prism).feasible


def test_two_disjoint_unit_triangles_infeasible():
    x = SepPoint(6, {
        (0, 1): 1, (1, 2): 1, (0, 2): 1,
        (3, 4): 1, (4, 5): 1, (3, 5): 1,
    })
    report = check_sep_feasible(x)
    assert not report.feasible
    assert report.witness in (frozenset({0, 1, 2}), frozenset({3, 4, 5}))
    assert "cut of weight 0" in report.violation


def test_degree_violation_reported_with_node():
    x = SepPoint(3, {(0, 1): 1, (1, 2): 1})
    report = check_sep_feasible(x)
    assert not report.feasible
    assert report.witness is not None


def test_disjoint_unit_squares_infeasible():
    x = SepPoint(8, {
        (0, 1): 1, (1, 2): 1, (2, 3): 1, (0, 3): 1,
        (4, 5): 1, (5, 6): 1, (6, 7): 1, (4, 7): 1,
    })
    report = check_sep_feasible(x)
    assert not report.feasible


# --- min cut ---------------------------------------------------------------

def test_min_cut_matches_exhaustive_on_random_graphs():
    rng = random.Random(5)
    for _ in range(25):
        n = rng.randint(3, 7)
        weights = {}
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.7:
                    weights[(i, j)] = Fraction(rng.randint(1, 8), rng.randint(1, 4))
        from sepgap.graphs import WeightedGraph
        g = WeightedGraph(n, weights)
        value, side = global_min_cut(g)
        # exhaustive oracle over all proper subsets containing node 0
        best = None
        for size in range(1, n):
            for tail in combinations(range(1, n), size - 1):
                subset = frozenset((0,) + tail)
                cut = sum(w for (i, j), w in weights.items()
                          if (i in subset) != (j in subset))
                best = cut if best is None else min(best, cut)
        assert value == best
        witness_cut = sum(w for (i, j), w in weights.items()
                          if (i in side) != (j in side))
        assert witness_cut == value


# --- vertexhood ------------------------------------------------------------

def test_tours_are_vertices():
    assert is_vertex(tour_point(range(6))).is_vertex
    assert is_vertex(tour_point([0, 2, 4, 1, 3, 5])).is_vertex


def test_midpoint_of_two_tours_is_not_a_vertex():
    t1 = tour_point(range(6))
    t2 = tour_point([0, 2, 4, 1, 3, 5])
    mid = {}
    for e in set(t1.edges) | set(t2.edges):
        mid[e] = (t1.weight(e) + t2.weight(e)) / 2
    x = SepPoint(6, mid)
    report = is_vertex(x)
    assert report.feasible and not report.is_vertex


def test_prism_is_a_vertex(prism):
    report = is_vertex(prism)
    assert report.is_vertex
    assert report.tight_rank == 15


def test_a4_fixtures_are_vertices(a4):
    for x in a4:
        assert is_vertex(x).is_vertex


def test_direct_check_bounded_at_twelve_nodes():
    x = tour_point(range(13))
    with pytest.raises(ValueError, match="too large"):
        is_vertex(x)


# --- bb moves --------------------------------------------------------------

def test_bb_move_on_prism_edge(prism):
    y = bb_move(prism, (0, 3))
    assert y.n == 7
    assert y.support_size() == 10
    assert y.weight((0, 3)) == 0
    assert y.weight((0, 6)) == 1 and y.weight((3, 6)) == 1
    assert y.weight((1, 4)) == 1  # untouched


def test_bb_move_requires_weight_one(prism):
    with pytest.raises(NotOneEdgeError):
        bb_move(prism, (0, 1))


def test_bb_move_preserves_edge_node_offset(prism):
    x = prism
    k0 = x.support_size() - x.n
    for e in [(0, 3), (1, 4)]:
        x = bb_move(x, e)
        assert x.support_size() - x.n == k0


def test_bb_move_preserves_vertexhood(all_ancestors):
    for x in all_ancestors:
        e = x.one_edges()[0]
        assert is_vertex(bb_move(x, e)).is_vertex


def test_bb_move_image_of_nonvertex_is_nonvertex():
    t1 = tour_point(range(6))
    t2 = tour_point([0, 1, 2, 3, 5, 4])
    mid = {}
    for e in set(t1.edges) | set(t2.edges):
        mid[e] = (t1.weight(e) + t2.weight(e)) / 2
    x = SepPoint(6, mid)
    ones = x.one_edges()
    assert ones, "midpoint of these two tours keeps shared 1-edges"
    y = bb_move(x, ones[0])
    assert not is_vertex(y).is_vertex


# --- contraction -----------------------------------------------------------

def test_contract_ancestor_is_identity(prism):
    dec = contract_to_ancestor(prism)
    assert dec.ancestor == prism
    assert all(d == 0 for _, d in dec.expansions)


def test_contract_undoes_single_bb_move(prism):
    y = bb_move(prism, (0, 3))
    dec = contract_to_ancestor(y)
    assert canonical_form(dec.ancestor.support()) == canonical_form(prism.support())
    assert sorted(d for _, d in dec.expansions) == [0, 0, 1]


def test_contract_reports_per_path_counts(prism):
    x = expand_one_edge(prism, (0, 3), 2)
    x = expand_one_edge(x, (2, 5), 1)
    dec = contract_to_ancestor(x)
    assert canonical_form(dec.ancestor.support()) == canonical_form(prism.support())
    assert sorted(d for _, d in dec.expansions) == [0, 1, 2]


def test_contract_inverts_random_bb_sequences(all_ancestors):
    rng = random.Random(11)
    for trial in range(50):
        x0 = all_ancestors[trial % len(all_ancestors)]
        x = x0
        for _ in range(rng.randint(1, 5)):
            x = bb_move(x, rng.choice(x.one_edges()))
        dec = contract_to_ancestor(x)
        assert canonical_form(dec.ancestor.support()) == canonical_form(x0.support())
        # re-expanding reproduces the input up to isomorphism
        y = dec.ancestor
        for e, d in dec.expansions:
            y = expand_one_edge(y, e, d)
        assert canonical_form(y.support()) == canonical_form(x.support())


def test_contract_ancestor_node_bounds(all_ancestors):
    for x in all_ancestors:
        dec = contract_to_ancestor(bb_move(x, x.one_edges()[0]))
        anc = dec.ancestor
        k = anc.support_size() - anc.n
        assert k + 3 <= anc.n <= 2 * k


# --- metric completion -----------------------------------------------------

def test_metric_completion_path():
    full = metric_completion(3, {(0, 1): Fraction(1), (1, 2): Fraction(2)})
    assert full[(0, 2)] == 3


def test_metric_completion_identity_on_complete_input():
    costs = {(0, 1): Fraction(2), (0, 2): Fraction(2), (1, 2): Fraction(3)}
    assert metric_completion(3, costs) == {edge(*e): c for e, c in costs.items()}


def test_metric_completion_prism_unit_costs(prism):
    full = metric_completion(6, {e: Fraction(1) for e in prism.edges})
    support = set(prism.edges)
    for e, c in full.items():
        assert c == (1 if e in support else 2)


def test_metric_completion_rejects_disconnected():
    with pytest.raises(ValueError, match="disconnected"):
        metric_completion(4, {(0, 1): Fraction(1), (2, 3): Fraction(1)})


def test_metric_completion_rejects_undercut_edge():
    costs = {(0, 1): Fraction(10), (0, 2): Fraction(1), (1, 2): Fraction(1)}
    with pytest.raises(ValueError, match="undercut"):
        metric_completion(3, costs)


def test_metric_completion_triangle_inequality_exhaustive():
    rng = random.Random(13)
    for _ in range(10):
        n = rng.randint(4, 10)
        # random connected subgraph with shortest-path-consistent costs:
        # start from a random metric and restrict it
        base = {}
        for i in range(n):
            for j in range(i + 1, n):
                den = rng.randint(1, 6)
                base[(i, j)] = Fraction(rng.randint(den, 2 * den), den)
        keep = {}
        for e, c in base.items():
            if rng.random() < 0.6:
                keep[e] = c
        for k in range(1, n):  # spanning path keeps it connected
            keep.setdefault((k - 1, k), base[(k - 1, k)])
        try:
            full = metric_completion(n, keep)
        except ValueError:
            continue  # restriction was not shortest-path consistent; skip
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(n):
                    if k in (i, j):
                        continue
                    assert full[edge(i, k)] + full[edge(k, j)] >= full[(i, j)]
