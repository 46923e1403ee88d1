"""Closed spanning walks with edge multiplicities capped at 2.

A walk is identified with its multiplicity vector: w_e in {0, 1, 2}, every
node has even positive multiplicity degree, and the used edges form a
connected spanning subgraph.  Traversal order never matters downstream, so
two traversals with equal multiplicities are the same walk.

``extend_walk`` realises the liftings used when a 1-edge (a, b) is expanded
into a path a, a_1, ..., a_d, b: a walk that skipped (a, b) spawns d+1
variants indexed by where the doubled back-and-forth deviations from the two
ends meet; a walk that crossed once (twice) is rerouted along the path once
(twice).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .graphs import Edge, WeightedGraph, edge

__all__ = [
    "Walk",
    "WalkViolation",
    "is_valid_walk",
    "enumerate_walks",
    "extend_walk",
    "doubled_tree_walk",
    "expansion_path_nodes",
]

MAX_ENUM_EDGES = 14


@dataclass(frozen=True)
class Walk:
    """Multiplicity vector of a closed spanning walk on an n-node graph."""

    n: int
    mult: tuple[tuple[Edge, int], ...]  # sorted; only entries with m in {1, 2}

    @staticmethod
    def from_dict(n: int, mult: Mapping[Edge, int]) -> "Walk":
        items = []
        for e, m in mult.items():
            e = edge(*e)
            if m == 0:
                continue
            if m not in (1, 2):
                raise ValueError(f"multiplicity {m} on {e} outside {{0,1,2}}")
            items.append((e, m))
        return Walk(n, tuple(sorted(items)))

    def multiplicity(self, e: Edge) -> int:
        e = edge(*e)
        for f, m in self.mult:
            if f == e:
                return m
        return 0

    def as_dict(self) -> dict[Edge, int]:
        return dict(self.mult)

    def cost(self, costs: Mapping[Edge, Fraction]) -> Fraction:
        return sum((Fraction(costs[e]) * m for e, m in self.mult), Fraction(0))

    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.mult)

    def is_tour(self) -> bool:
        return all(m == 1 for _, m in self.mult) and len(self.mult) == self.n


@dataclass(frozen=True)
class WalkViolation:
    reason: str
    witness: int | Edge | None = None


def _degrees(n: int, mult: Iterable[tuple[Edge, int]]) -> list[int]:
    deg = [0] * n
    for (i, j), m in mult:
        deg[i] += m
        deg[j] += m
    return deg


def is_valid_walk(g: WeightedGraph, w: Walk | Mapping[Edge, int]) -> tuple[bool, WalkViolation | None]:
    """Check the three walk invariants on the host graph g.

    Returns (True, None) or (False, violation) naming the failed invariant
    with a witness node or edge.
    """
    mult = w.mult if isinstance(w, Walk) else tuple(sorted(
        (edge(*e), m) for e, m in w.items() if m
    ))
    if isinstance(w, Walk) and w.n != g.n:
        return False, WalkViolation(f"walk is on {w.n} nodes, graph on {g.n}")
    for e, m in mult:
        if m not in (1, 2):
            return False, WalkViolation(f"multiplicity {m} outside {{0,1,2}}", e)
        if not g.has_edge(e):
            return False, WalkViolation("edge not in host graph", e)
    deg = _degrees(g.n, mult)
    for v in range(g.n):
        if deg[v] == 0:
            return False, WalkViolation("node not visited", v)
        if deg[v] % 2 == 1:
            return False, WalkViolation("odd multiplicity degree", v)
    # connectivity of the used edges
    adj: dict[int, list[int]] = {v: [] for v in range(g.n)}
    for (i, j), _ in mult:
        adj[i].append(j)
        adj[j].append(i)
    seen = {0} if g.n else set()
    stack = [0] if g.n else []
    while stack:
        v = stack.pop()
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    if len(seen) != g.n:
        missing = min(set(range(g.n)) - seen)
        return False, WalkViolation("used edges are disconnected", missing)
    return True, None


def enumerate_walks(g: WeightedGraph) -> list[Walk]:
    """All valid walks on g, in lexicographic multiplicity order.

    Exhaustive over {0,1,2}^E with parity pruning; limited to |E| <= 14.
    """
    m = len(g.edges)
    if m > MAX_ENUM_EDGES:
        raise ValueError(f"edge count {m} too large for enumeration (max {MAX_ENUM_EDGES})")
    edges = list(g.edges)
    # after assigning edge k, node v is complete iff last_index[v] == k
    last_index = {v: -1 for v in range(g.n)}
    for k, (i, j) in enumerate(edges):
        last_index[i] = k
        last_index[j] = k
    closing = {k: [v for v, last in last_index.items() if last == k] for k in range(m)}

    out: list[Walk] = []
    deg = [0] * g.n
    assign = [0] * m

    def rec(k: int) -> None:
        if k == m:
            mult = {edges[i]: assign[i] for i in range(m) if assign[i]}
            ok, _ = is_valid_walk(g, mult)
            if ok:
                out.append(Walk.from_dict(g.n, mult))
            return
        i, j = edges[k]
        for val in (0, 1, 2):
            assign[k] = val
            deg[i] += val
            deg[j] += val
            good = True
            for v in closing[k]:
                if deg[v] % 2 == 1 or deg[v] < 2:
                    good = False
                    break
            if good:
                rec(k + 1)
            deg[i] -= val
            deg[j] -= val
        assign[k] = 0

    if g.n > 0 and all(last_index[v] >= 0 for v in range(g.n)):
        rec(0)
    return out


def _repair(mult: dict[Edge, int]) -> dict[Edge, int]:
    """Drop pairs of copies from any edge used more than twice."""
    for e in list(mult):
        while mult[e] > 2:
            mult[e] -= 2
        if mult[e] == 0:
            del mult[e]
    return mult


def expansion_path_nodes(n: int, e: Edge, d: int) -> list[int]:
    """Node sequence a, a_1, ..., a_d, b of the expanded 1-edge e=(a, b).

    The inserted nodes are n, n+1, ..., n+d-1 of the expanded point, in
    path order (matching ``expand_one_edge``).
    """
    a, b = edge(*e)
    return [a] + list(range(n, n + d)) + [b]


def extend_walk(w: Walk, e: Edge, d: int, m: int, k: int = 0) -> Walk:
    """Lift a walk through the expansion of the 1-edge e into a d-node path.

    ``m`` must equal the walk's multiplicity on e.  For m=0 the result is the
    k-indexed variant (0 <= k <= d): the walk deviates from a through
    a_1..a_k and back, and from b through a_d..a_{k+1} and back, every
    deviation edge doubled and the gap edge between a_k and a_{k+1} unused.
    For m=1 (m=2) the single (double) crossing of e is rerouted along the
    path.  If any multiplicity were to exceed 2, two copies are removed.
    """
    e = edge(*e)
    if w.multiplicity(e) != m:
        raise ValueError(f"class mismatch: walk uses {e} {w.multiplicity(e)} times, not {m}")
    if d == 0:
        return w
    path = expansion_path_nodes(w.n, e, d)
    path_edges = [edge(a, b) for a, b in zip(path, path[1:])]
    mult = w.as_dict()
    if m == 0:
        if not (0 <= k <= d):
            raise ValueError(f"deviation index k={k} outside 0..{d}")
        for f in path_edges[:k]:
            mult[f] = mult.get(f, 0) + 2
        for f in path_edges[k + 1:]:
            mult[f] = mult.get(f, 0) + 2
    else:
        mult[e] -= m
        if mult[e] == 0:
            del mult[e]
        for f in path_edges:
            mult[f] = mult.get(f, 0) + m
    return Walk.from_dict(w.n + d, _repair(mult))


def doubled_tree_walk(g: WeightedGraph, costs: Mapping[Edge, Fraction] | None = None) -> Walk:
    """The walk doubling a minimum spanning tree of g (unit costs by default)."""
    if not g.is_connected():
        raise ValueError("graph is disconnected")
    ranked = sorted(g.edges, key=lambda e: (Fraction(costs[e]) if costs else Fraction(1), e))
    parent = list(range(g.n))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    mult: dict[Edge, int] = {}
    for e in ranked:
        ri, rj = find(e[0]), find(e[1])
        if ri != rj:
            parent[ri] = rj
            mult[e] = 2
    return Walk.from_dict(g.n, mult)
