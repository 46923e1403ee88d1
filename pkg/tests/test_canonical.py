from __future__ import annotations

import random
from fractions import Fraction

from sepgap.canonical import canonical_form, canonical_labeling, relabel
from sepgap.graphs import WeightedGraph, edge

H = Fraction(1, 2)


def _permuted(g: WeightedGraph, perm: list[int]) -> WeightedGraph:
    return WeightedGraph(g.n, {edge(perm[i], perm[j]): w for (i, j), w in g})


def test_form_is_invariant_under_1000_random_permutations(all_ancestors):
    rng = random.Random(2024)
    for x in all_ancestors:
        g = x.support()
        base = canonical_form(g)
        for _ in range(1000 // len(all_ancestors) + 1):
            perm = list(range(g.n))
            rng.shuffle(perm)
            assert canonical_form(_permuted(g, perm)) == base


def test_distinct_weight_multisets_give_distinct_forms():
    t1 = WeightedGraph(3, {(0, 1): 1, (0, 2): H, (1, 2): H})
    t2 = WeightedGraph(3, {(0, 1): 1, (0, 2): 1, (1, 2): H})
    assert canonical_form(t1) != canonical_form(t2)


def test_same_shape_different_weights_distinct():
    c4a = WeightedGraph(4, {(0, 1): 1, (1, 2): H, (2, 3): 1, (0, 3): H})
    c4b = WeightedGraph(4, {(0, 1): 1, (1, 2): 1, (2, 3): H, (0, 3): H})
    # both are 4-cycles with two 1-edges, but alternating vs adjacent
    assert canonical_form(c4a) != canonical_form(c4b)


def test_a4_ancestors_pairwise_distinct(a4):
    forms = {canonical_form(x.support()) for x in a4}
    assert len(forms) == 5


def test_labeling_realises_the_form(prism):
    g = prism.support()
    form, mapping = canonical_labeling(g)
    relabeled = relabel(g, mapping)
    direct = tuple(sorted((i, j, w) for (i, j), w in relabeled))
    assert direct == form.edges


def test_nonisomorphic_same_degree_sequence():
    # two unit-weight 6-node cubic graphs: K_3,3 vs the 3-prism
    k33 = WeightedGraph(6, {(i, j + 3): 1 for i in range(3) for j in range(3)})
    prism_graph = WeightedGraph(6, {
        (0, 1): 1, (1, 2): 1, (0, 2): 1,
        (3, 4): 1, (4, 5): 1, (3, 5): 1,
        (0, 3): 1, (1, 4): 1, (2, 5): 1,
    })
    assert canonical_form(k33) != canonical_form(prism_graph)
