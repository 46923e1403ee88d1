"""Feasibility and vertexhood for the subtour-elimination polytope, the
1-edge splitting move, ancestor contraction, and metric completion.

Feasibility of a point x means: weighted degree exactly 2 at every node,
0 <= x_e <= 1, and every proper cut of the support graph weighing at least 2.
The cut condition is checked with one exact global min-cut computation;
singleton and two-node cuts already follow from the degree equations and the
edge bounds, so min cut >= 2 is equivalent to all subtour constraints.

A feasible point is a vertex iff its tight constraints (degree rows, tight
cuts, tight edge bounds) have full rank |E_n|; the rank is computed exactly
by fraction-free elimination over the integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Mapping

from .graphs import Edge, SepPoint, edge, one_paths
from .mincut import global_min_cut

__all__ = [
    "SubtourCut",
    "VertexCheckReport",
    "AncestorDecomposition",
    "NotOneEdgeError",
    "check_sep_feasible",
    "is_vertex",
    "bb_move",
    "expand_one_edge",
    "contract_to_ancestor",
    "metric_completion",
]

MAX_DIRECT_CHECK_NODES = 12


class NotOneEdgeError(ValueError):
    """The requested edge does not carry weight exactly 1."""


@dataclass(frozen=True)
class SubtourCut:
    """A node subset with 3 <= |S| <= n-3 and the weight crossing it."""

    subset: frozenset[int]
    value: Fraction


@dataclass(frozen=True)
class VertexCheckReport:
    feasible: bool
    violation: str | None = None
    witness: frozenset[int] | None = None
    tight_count: int = 0
    tight_rank: int = 0
    is_vertex: bool = False


@dataclass(frozen=True)
class AncestorDecomposition:
    """An ancestor plus the internal-node count removed from each 1-path.

    ``expansions`` pairs each 1-edge of the ancestor with the number of
    nodes to re-insert; expanding them reproduces the original point up to
    isomorphism.
    """

    ancestor: SepPoint
    expansions: tuple[tuple[Edge, int], ...] = field(default=())


def _cut_value(x: SepPoint, subset: frozenset[int]) -> Fraction:
    total = Fraction(0)
    for (i, j), w in x.items():
        if (i in subset) != (j in subset):
            total += w
    return total


def check_sep_feasible(x: SepPoint) -> VertexCheckReport:
    """Degree equations, edge bounds, and the cut condition; first violation wins."""
    if x.n < 3:
        return VertexCheckReport(False, violation="fewer than 3 nodes")
    support = x.support()
    for v in range(x.n):
        d = support.weighted_degree(v)
        if d != 2:
            return VertexCheckReport(
                False, violation=f"degree of node {v} is {d}, not 2", witness=frozenset([v])
            )
    # SepPoint construction already enforces 0 < x_e <= 1 on stored entries.
    cut, side = global_min_cut(support)
    if cut < 2:
        return VertexCheckReport(
            False,
            violation=f"cut of weight {cut} below 2",
            witness=frozenset(side),
        )
    return VertexCheckReport(True)


def _int_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix, by fraction-free row elimination."""
    basis: list[list[int]] = []  # rows in echelon form, leading columns increasing
    pivots: list[int] = []
    for row in rows:
        row = list(row)
        for lead, brow in zip(pivots, basis):
            if row[lead]:
                f_new, f_old = brow[lead], row[lead]
                row = [f_new * a - f_old * b for a, b in zip(row, brow)]
        try:
            lead = next(k for k, a in enumerate(row) if a)
        except StopIteration:
            continue
        g = 0
        for a in row:
            g = gcd(g, a)
        if g > 1:
            row = [a // g for a in row]
        pos = 0
        while pos < len(pivots) and pivots[pos] < lead:
            pos += 1
        pivots.insert(pos, lead)
        basis.insert(pos, row)
    return len(basis)


def tight_subtour_cuts(x: SepPoint) -> list[SubtourCut]:
    """All subsets (up to complement) with 3 <= |S| <= n-3 and cut exactly 2."""
    n = x.n
    tight = []
    rest = list(range(1, n))
    for size in range(3, n - 2):
        # fix node 0 inside S so each {S, complement} pair appears once
        for tail in combinations(rest, size - 1):
            subset = frozenset((0,) + tail)
            val = _cut_value(x, subset)
            if val == 2:
                tight.append(SubtourCut(subset, val))
    return tight


def is_vertex(x: SepPoint) -> VertexCheckReport:
    """Direct vertex check: feasibility plus full tight-constraint rank.

    Only available for n <= 12 (tight subtour cuts are enumerated); larger
    points should be certified through their construction instead.
    """
    if x.n > MAX_DIRECT_CHECK_NODES:
        raise ValueError(f"dimension too large for direct check (n={x.n} > {MAX_DIRECT_CHECK_NODES})")
    report = check_sep_feasible(x)
    if not report.feasible:
        return report

    support_edges = x.edges
    col = {e: k for k, e in enumerate(support_edges)}
    m = len(support_edges)
    rows: list[list[int]] = []
    # degree rows, restricted to support columns
    for v in range(x.n):
        row = [0] * m
        for u in range(x.n):
            if u != v and (e := edge(v, u)) in col:
                row[col[e]] = 1
        rows.append(row)
    # tight upper bounds x_e = 1
    for e in x.one_edges():
        row = [0] * m
        row[col[e]] = 1
        rows.append(row)
    # tight subtour cuts
    cuts = tight_subtour_cuts(x) if x.n >= 6 else []
    for cut in cuts:
        row = [0] * m
        for e in support_edges:
            if (e[0] in cut.subset) != (e[1] in cut.subset):
                row[col[e]] = 1
        rows.append(row)

    # Lower bounds x_e = 0 are tight on every non-support edge and span those
    # columns; the point is a vertex iff the remaining rows span the support.
    rank = _int_rank(rows)
    n_total = x.n * (x.n - 1) // 2
    tight_total = len(rows) + (n_total - m)
    return VertexCheckReport(
        True,
        tight_count=tight_total,
        tight_rank=rank + (n_total - m),
        is_vertex=(rank == m),
    )


def bb_move(x: SepPoint, e: Edge) -> SepPoint:
    """Split the 1-edge e=(a,b) with a fresh node: a-w and w-b become 1-edges.

    The new node gets index n; every other weight is preserved and e itself
    drops to zero.  Adds exactly one node and one edge to the support.
    """
    e = edge(*e)
    if x.weight(e) != 1:
        raise NotOneEdgeError(f"edge {e} has weight {x.weight(e)}, not 1")
    a, b = e
    w = x.n
    new_weights = {f: wt for f, wt in x.items() if f != e}
    new_weights[edge(a, w)] = Fraction(1)
    new_weights[edge(w, b)] = Fraction(1)
    return SepPoint(x.n + 1, new_weights)


def expand_one_edge(x: SepPoint, e: Edge, d: int) -> SepPoint:
    """Expand the 1-edge e into a 1-path with d internal nodes.

    The inserted nodes are n, n+1, ..., n+d-1 in path order, matching d
    successive splits of the trailing segment.
    """
    e = edge(*e)
    if d < 0:
        raise ValueError("d must be nonnegative")
    cur = x
    a, b = e
    last = a
    for _ in range(d):
        fresh = cur.n
        cur = bb_move(cur, edge(last, b))
        last = fresh
    return cur


def contract_to_ancestor(x: SepPoint) -> AncestorDecomposition:
    """Shrink every 1-path to a single 1-edge by deleting its internal nodes.

    The result has no degree-2 node.  Nodes are compacted to 0..m-1 keeping
    their relative order; the returned expansion counts are keyed by the
    ancestor's 1-edges or, when several 1-paths share end nodes after
    relabeling, listed in path order.
    """
    if not x.is_fractional():
        raise ValueError("tour vectors have no fractional ancestor")
    paths = one_paths(x)
    support = x.support()
    internal: set[int] = set()
    for path in paths:
        for v in path.internal_nodes:
            if support.degree(v) != 2:
                raise ValueError(f"internal 1-path node {v} has support degree != 2")
            internal.add(v)
    keep = [v for v in range(x.n) if v not in internal]
    relabel = {v: k for k, v in enumerate(keep)}

    path_edges = {e for p in paths for e in p.edges}
    new_weights: dict[Edge, Fraction] = {}
    for (i, j), w in x.items():
        if (i, j) in path_edges:
            continue
        if i in internal or j in internal:
            raise ValueError(f"edge {(i, j)} leaves a 1-path through an internal node")
        new_weights[edge(relabel[i], relabel[j])] = w
    expansions = []
    for path in paths:
        u, v = path.end_nodes
        anc_edge = edge(relabel[u], relabel[v])
        if anc_edge in new_weights:
            raise ValueError(f"1-path end nodes {u},{v} already adjacent")
        new_weights[anc_edge] = Fraction(1)
        expansions.append((anc_edge, len(path.internal_nodes)))

    ancestor = SepPoint(len(keep), new_weights)
    anc_support = ancestor.support()
    for v in range(ancestor.n):
        if anc_support.degree(v) == 2:
            raise ValueError(f"contracted point still has a degree-2 node ({v})")
    m, nn = ancestor.support_size(), ancestor.n
    k = m - nn
    if not (k + 3 <= nn <= 2 * k):
        raise ValueError(f"ancestor violates node bounds: n={nn}, k={k}")
    return AncestorDecomposition(ancestor, tuple(sorted(expansions)))


def metric_completion(n: int, costs: Mapping[Edge, Fraction]) -> dict[Edge, Fraction]:
    """Complete edge costs to all of K_n by exact shortest-path distances.

    ``costs`` carries the existing edges (zero cost allowed).  Requires the
    cost graph to be connected and each existing edge to already be a
    shortest path between its endpoints (otherwise the completion could not
    both preserve the given costs and satisfy the triangle inequalities).
    """
    INF = None
    dist: list[list[Fraction | None]] = [[INF] * n for _ in range(n)]
    for v in range(n):
        dist[v][v] = Fraction(0)
    for (i, j), w in costs.items():
        i, j = edge(i, j)
        if w < 0:
            raise ValueError(f"negative cost on edge {(i, j)}")
        if j >= n:
            raise ValueError(f"edge {(i, j)} out of range for n={n}")
        dist[i][j] = dist[j][i] = Fraction(w)
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if dik is INF:
                continue
            di = dist[i]
            for j in range(n):
                dkj = dk[j]
                if dkj is INF:
                    continue
                alt = dik + dkj
                if di[j] is INF or alt < di[j]:
                    di[j] = alt
    full: dict[Edge, Fraction] = {}
    for i in range(n):
        for j in range(i + 1, n):
            d = dist[i][j]
            if d is INF:
                raise ValueError("disconnected graph: no path between "
                                 f"{i} and {j}")
            full[(i, j)] = d
    for (i, j), w in costs.items():
        if full[edge(i, j)] != w:
            raise ValueError(
                f"edge {(i, j)} of cost {w} is undercut by a path of cost {full[edge(i, j)]}"
            )
    return full
