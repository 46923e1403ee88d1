"""Deterministic global minimum cut of a weighted graph (Stoer-Wagner).

Weights are exact rationals; ties in the maximum-adjacency sweep are broken
by smallest node id, so the returned cut is reproducible.
"""

from __future__ import annotations

from fractions import Fraction

from .graphs import WeightedGraph, edge

__all__ = ["global_min_cut"]


def global_min_cut(g: WeightedGraph) -> tuple[Fraction, frozenset[int]]:
    """Minimum total weight over all cuts (S, V\\S) with S a proper subset.

    Returns (cut value, one side of an optimal cut).  A disconnected graph
    yields value 0 with a connected component as witness.  Requires n >= 2.
    """
    if g.n < 2:
        raise ValueError("min cut needs at least two nodes")
    if not g.is_connected():
        comp = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for u in g.neighbors(v):
                if u not in comp:
                    comp.add(u)
                    stack.append(u)
        return Fraction(0), frozenset(comp)

    # contracted-graph adjacency: weights between super-nodes
    w: dict[int, dict[int, Fraction]] = {v: {} for v in range(g.n)}
    for (i, j), wt in g:
        w[i][j] = w[i].get(j, Fraction(0)) + wt
        w[j][i] = w[j].get(i, Fraction(0)) + wt
    members: dict[int, frozenset[int]] = {v: frozenset([v]) for v in range(g.n)}

    best_value: Fraction | None = None
    best_side: frozenset[int] = frozenset()

    while len(w) > 1:
        # maximum-adjacency sweep from the smallest active node
        active = sorted(w)
        start = active[0]
        in_a = {start}
        conn = {v: w[start].get(v, Fraction(0)) for v in active if v != start}
        order = [start]
        while conn:
            nxt = min(conn, key=lambda v: (-conn[v], v))
            order.append(nxt)
            in_a.add(nxt)
            del conn[nxt]
            for v, wt in w[nxt].items():
                if v not in in_a:
                    conn[v] += wt
        s, t = order[-2], order[-1]
        cut_of_phase = sum(w[t].values(), Fraction(0))
        if best_value is None or cut_of_phase < best_value:
            best_value = cut_of_phase
            best_side = members[t]
        # merge t into s
        for v, wt in w[t].items():
            if v == s:
                continue
            w[s][v] = w[s].get(v, Fraction(0)) + wt
            w[v][s] = w[v].get(s, Fraction(0)) + wt
        for v in w[t]:
            del w[v][t]
        del w[t]
        members[s] = members[s] | members[t]
        del members[t]

    assert best_value is not None
    return best_value, best_side
