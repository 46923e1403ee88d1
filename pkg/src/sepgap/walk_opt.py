"""Exact minimum-cost closed spanning walk by branch and bound.

Branches over edge multiplicities in {0, 1, 2}, most expensive edge first.
Propagation: once a node's incident edges are all fixed its multiplicity
degree must be even and at least 2; partially fixed nodes contribute a
deficiency-based lower bound (each missing unit of degree costs at least
half the cheapest undecided incident edge).  Zero-assignments trigger a
connectivity check over still-usable edges.  The incumbent starts from the
doubled minimum spanning tree, which is always a valid walk.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .graphs import Edge, WeightedGraph
from .walks import Walk, doubled_tree_walk, is_valid_walk

__all__ = ["min_cost_walk"]


def min_cost_walk(g: WeightedGraph, costs: Mapping[Edge, Fraction]) -> tuple[Walk, Fraction]:
    """A valid walk on g of exactly minimum total cost (costs nonnegative)."""
    if not g.is_connected():
        raise ValueError("graph is disconnected; no spanning walk exists")
    cost = {}
    for e in g.edges:
        c = Fraction(costs[e])
        if c < 0:
            raise ValueError(f"negative cost on edge {e}")
        cost[e] = c

    incumbent = doubled_tree_walk(g, cost)
    best_cost = incumbent.cost(cost)
    best_mult = incumbent.as_dict()

    order = sorted(g.edges, key=lambda e: (-cost[e], e))
    m = len(order)
    n = g.n
    incident: list[list[int]] = [[] for _ in range(n)]
    for k, (i, j) in enumerate(order):
        incident[i].append(k)
        incident[j].append(k)
    remaining_at: list[list[int]] = [[0] * n for _ in range(m + 1)]
    for k in range(m - 1, -1, -1):
        row, (i, j) = remaining_at[k], order[k]
        row[:] = remaining_at[k + 1]
        row[i] += 1
        row[j] += 1

    assign = [0] * m
    deg = [0] * n
    cheapest_undecided = [None] * n  # lazily computed per node inside the bound

    def lower_bound(k: int, fixed_cost: Fraction) -> Fraction:
        # each node still needing degree r pays at least r/2 times the
        # cheapest undecided incident edge (every unit covers two nodes)
        extra = Fraction(0)
        rem = remaining_at[k]
        for v in range(n):
            need = 2 - deg[v]
            if need <= 0:
                if deg[v] % 2 == 1:
                    need = 1
                else:
                    continue
            cmin = None
            for idx in incident[v]:
                if idx >= k:
                    c = cost[order[idx]]
                    if cmin is None or c < cmin:
                        cmin = c
            if cmin is None:
                return best_cost  # cannot be fixed; prune via bound
            if cmin > 0:
                extra += Fraction(need, 2) * cmin
        return fixed_cost + extra

    def usable_connected(k: int) -> bool:
        # edges assigned positive plus all undecided must connect every node
        parent = list(range(n))

        def find(v: int) -> int:
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        comps = n
        for idx in range(m):
            if idx < k and assign[idx] == 0:
                continue
            i, j = order[idx]
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
                comps -= 1
        return comps == 1

    def rec(k: int, fixed_cost: Fraction) -> None:
        nonlocal best_cost, best_mult
        if fixed_cost >= best_cost:
            return
        if k == m:
            mult = {order[i]: assign[i] for i in range(m) if assign[i]}
            ok, _ = is_valid_walk(g, mult)
            if ok and fixed_cost < best_cost:
                best_cost = fixed_cost
                best_mult = dict(mult)
            return
        i, j = order[k]
        rem = remaining_at[k + 1]
        for val in (0, 1, 2):
            assign[k] = val
            deg[i] += val
            deg[j] += val
            good = True
            for v in (i, j):
                slack = 2 * rem[v]
                if deg[v] + slack < 2 or (slack == 0 and deg[v] % 2 == 1):
                    good = False
                    break
            if good and val == 0 and not usable_connected(k + 1):
                good = False
            if good:
                nb = lower_bound(k + 1, fixed_cost + val * cost[(i, j)])
                if nb < best_cost:
                    rec(k + 1, fixed_cost + val * cost[(i, j)])
            deg[i] -= val
            deg[j] -= val
        assign[k] = 0

    rec(0, Fraction(0))
    return Walk.from_dict(n, best_mult), best_cost
