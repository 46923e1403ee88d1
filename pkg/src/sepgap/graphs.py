"""Weighted graphs on node sets {0..n-1}, candidate relaxation points, and
their 1-path structure.

An edge is an unordered pair of distinct nodes, normalised to ``(min, max)``.
A ``SepPoint`` is a sparse exact-rational weight vector on the edges of the
complete graph: stored entries lie in (0, 1], absent entries are zero.  Its
support graph is the weighted graph of the nonzero entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Tuple

__all__ = [
    "Edge",
    "edge",
    "all_edges",
    "WeightedGraph",
    "SepPoint",
    "OnePath",
    "OneEdgeAnomalyError",
    "support_graph",
    "one_paths",
]

Edge = Tuple[int, int]


def edge(i: int, j: int) -> Edge:
    """Normalise an unordered node pair to (min, max)."""
    if i == j:
        raise ValueError(f"loops are not edges: ({i}, {j})")
    if i < 0 or j < 0:
        raise ValueError(f"negative node index: ({i}, {j})")
    return (i, j) if i < j else (j, i)


def all_edges(n: int) -> list[Edge]:
    """Every edge of the complete graph on n nodes, in lexicographic order."""
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


class WeightedGraph:
    """Immutable weighted graph; weights are positive exact rationals."""

    __slots__ = ("n", "_weights", "_edges", "_adj", "_hash")

    def __init__(self, n: int, weights: Mapping[Edge, Fraction] | Iterable[tuple[Edge, Fraction]]):
        items = weights.items() if isinstance(weights, Mapping) else weights
        norm: dict[Edge, Fraction] = {}
        for (i, j), w in items:
            e = edge(i, j)
            if not (0 <= e[0] and e[1] < n):
                raise ValueError(f"edge {e} out of range for n={n}")
            w = Fraction(w)
            if w <= 0:
                raise ValueError(f"non-positive weight {w} on edge {e}")
            if e in norm:
                raise ValueError(f"duplicate edge {e}")
            norm[e] = w
        self.n = n
        self._weights = norm
        self._edges = tuple(sorted(norm))
        adj: dict[int, list[int]] = {v: [] for v in range(n)}
        for (i, j) in self._edges:
            adj[i].append(j)
            adj[j].append(i)
        self._adj = {v: tuple(nbrs) for v, nbrs in adj.items()}
        self._hash = hash((n, tuple((e, norm[e]) for e in self._edges)))

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def weights(self) -> dict[Edge, Fraction]:
        return dict(self._weights)

    def weight(self, e: Edge) -> Fraction:
        return self._weights.get(edge(*e), Fraction(0))

    def has_edge(self, e: Edge) -> bool:
        return edge(*e) in self._weights

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        """Number of incident edges (not the weighted degree)."""
        return len(self._adj[v])

    def weighted_degree(self, v: int) -> Fraction:
        return sum((self._weights[edge(v, u)] for u in self._adj[v]), Fraction(0))

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for u in self._adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.n

    def __iter__(self) -> Iterator[tuple[Edge, Fraction]]:
        return iter((e, self._weights[e]) for e in self._edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self.n == other.n and self._weights == other._weights

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={len(self._edges)})"


class SepPoint:
    """Sparse exact weight vector on the edges of K_n; entries in (0, 1]."""

    __slots__ = ("n", "_weights", "_edges", "_hash")

    def __init__(self, n: int, weights: Mapping[Edge, Fraction] | Iterable[tuple[Edge, Fraction]]):
        items = weights.items() if isinstance(weights, Mapping) else weights
        norm: dict[Edge, Fraction] = {}
        for (i, j), w in items:
            e = edge(i, j)
            if e[1] >= n:
                raise ValueError(f"edge {e} out of range for n={n}")
            w = Fraction(w)
            if w <= 0 or w > 1:
                raise ValueError(f"weight {w} on edge {e} outside (0, 1]")
            if e in norm:
                raise ValueError(f"duplicate edge {e}")
            norm[e] = w
        self.n = n
        self._weights = norm
        self._edges = tuple(sorted(norm))
        self._hash = hash((n, tuple((e, norm[e]) for e in self._edges)))

    @property
    def edges(self) -> tuple[Edge, ...]:
        """Support edges, sorted."""
        return self._edges

    @property
    def weights(self) -> dict[Edge, Fraction]:
        return dict(self._weights)

    def weight(self, e: Edge) -> Fraction:
        return self._weights.get(edge(*e), Fraction(0))

    def support_size(self) -> int:
        return len(self._edges)

    def one_edges(self) -> tuple[Edge, ...]:
        return tuple(e for e in self._edges if self._weights[e] == 1)

    def is_fractional(self) -> bool:
        """True when some entry is strictly between 0 and 1."""
        return any(w != 1 for w in self._weights.values())

    def support(self) -> WeightedGraph:
        return WeightedGraph(self.n, self._weights)

    def items(self) -> Iterator[tuple[Edge, Fraction]]:
        return iter((e, self._weights[e]) for e in self._edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SepPoint):
            return NotImplemented
        return self.n == other.n and self._weights == other._weights

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"SepPoint(n={self.n}, support={len(self._edges)})"


def support_graph(x: SepPoint) -> WeightedGraph:
    """The weighted graph of the nonzero components of x."""
    return x.support()


@dataclass(frozen=True)
class OnePath:
    """A maximal path of weight-1 edges, recorded as its node sequence."""

    nodes: tuple[int, ...]

    @property
    def end_nodes(self) -> tuple[int, int]:
        return (self.nodes[0], self.nodes[-1])

    @property
    def internal_nodes(self) -> tuple[int, ...]:
        return self.nodes[1:-1]

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(edge(a, b) for a, b in zip(self.nodes, self.nodes[1:]))

    def __len__(self) -> int:
        return len(self.nodes) - 1


class OneEdgeAnomalyError(ValueError):
    """The 1-edge structure contradicts what a valid fractional point allows."""


def one_paths(x: SepPoint) -> list[OnePath]:
    """Decompose the weight-1 edges of x into maximal paths.

    Every 1-edge belongs to exactly one returned path.  Raises
    OneEdgeAnomalyError when x has no 1-edge at all, when some node carries
    three or more 1-edges, or when the 1-edges close a cycle (as they do for
    a tour vector, which has no 1-path decomposition).
    """
    ones = x.one_edges()
    if not ones:
        raise OneEdgeAnomalyError("point has no 1-edges")
    nbr: dict[int, list[int]] = {}
    for (i, j) in ones:
        nbr.setdefault(i, []).append(j)
        nbr.setdefault(j, []).append(i)
    for v, us in nbr.items():
        if len(us) > 2:
            raise OneEdgeAnomalyError(f"node {v} carries {len(us)} 1-edges")

    paths: list[OnePath] = []
    visited: set[int] = set()
    endpoints = sorted(v for v, us in nbr.items() if len(us) == 1)
    for start in endpoints:
        if start in visited:
            continue
        seq = [start]
        visited.add(start)
        prev, cur = None, start
        while True:
            nxt = [u for u in nbr[cur] if u != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            seq.append(cur)
            visited.add(cur)
        paths.append(OnePath(tuple(seq)))
    if len(visited) != len(nbr):
        raise OneEdgeAnomalyError("1-edges contain a closed cycle")
    return paths
