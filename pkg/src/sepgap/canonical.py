"""Canonical forms of weighted graphs, for isomorphism-invariant dedup.

Weights act as edge colours and are compared exactly as rationals.  The
canonical form is the lexicographically least edge-list encoding over all
relabelings that survive colour refinement: we refine node colours to a
stable partition, then individualise every member of the first non-singleton
cell in turn and recurse.  Exhaustive individualisation keeps this exact (two
graphs get equal forms iff they are isomorphic as weighted graphs); graphs
here stay small, so the worst-case backtracking cost is acceptable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .graphs import Edge, WeightedGraph, edge

__all__ = ["CanonicalForm", "canonical_form", "canonical_labeling"]


@dataclass(frozen=True)
class CanonicalForm:
    """Relabeling-invariant encoding: node count plus canonical edge list."""

    n: int
    edges: tuple[tuple[int, int, Fraction], ...]

    def sort_key(self) -> tuple:
        return (self.n, len(self.edges), self.edges)


def _refine(adj: Mapping[int, list[tuple[int, Fraction]]], colors: dict[int, int]) -> dict[int, int]:
    """Iterate colour refinement until the partition is stable.

    New colour ids are assigned by sorting the (old colour, neighbourhood
    signature) keys, so they only depend on the graph structure, never on
    the input labels.
    """
    nodes = sorted(adj)
    while True:
        keys = {
            v: (colors[v], tuple(sorted((w, colors[u]) for u, w in adj[v])))
            for v in nodes
        }
        order = sorted(set(keys.values()))
        new = {v: order.index(keys[v]) for v in nodes}
        if new == colors:
            return colors
        colors = new


def _search(adj, colors, n, best: list):
    classes: dict[int, list[int]] = {}
    for v, c in colors.items():
        classes.setdefault(c, []).append(v)
    target = None
    for c in sorted(classes):
        if len(classes[c]) > 1:
            target = classes[c]
            break
    if target is None:
        # discrete partition: colour order is the labeling
        label = {v: colors[v] for v in colors}
        enc = tuple(sorted(
            (min(label[i], label[j]), max(label[i], label[j]), w)
            for i, nb in adj.items() for j, w in nb if i < j
        ))
        if best[0] is None or enc < best[0]:
            best[0] = enc
            best[1] = label
        return
    for v in sorted(target):
        refined = dict(colors)
        # give v a colour of its own, just below the rest of its cell
        for u in colors:
            refined[u] = colors[u] * 2 + (0 if u == v else 1)
        _search(adj, _refine(adj, refined), n, best)


def canonical_labeling(g: WeightedGraph) -> tuple[CanonicalForm, dict[int, int]]:
    """Canonical form of g together with one relabeling that achieves it."""
    adj: dict[int, list[tuple[int, Fraction]]] = {v: [] for v in range(g.n)}
    for (i, j), w in g:
        adj[i].append((j, w))
        adj[j].append((i, w))
    init = {v: 0 for v in range(g.n)}
    colors = _refine(adj, init)
    best: list = [None, None]
    _search(adj, colors, g.n, best)
    if best[0] is None:  # edgeless graph
        best[0] = ()
        best[1] = {v: v for v in range(g.n)}
    return CanonicalForm(g.n, best[0]), best[1]


def canonical_form(g: WeightedGraph) -> CanonicalForm:
    """Relabeling-invariant form; equal iff isomorphic as weighted graphs."""
    return canonical_labeling(g)[0]


def relabel(g: WeightedGraph, mapping: Mapping[int, int]) -> WeightedGraph:
    """Apply a node bijection to a weighted graph."""
    return WeightedGraph(g.n, {edge(mapping[i], mapping[j]): w for (i, j), w in g})
