"""Exact optimal tour values on complete graphs with rational costs.

The dynamic program runs over integers after clearing denominators, so the
result is exact; the permutation oracle exists as an independent
cross-check for small n.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import lcm
from typing import Mapping

from .graphs import Edge, edge

__all__ = ["tsp_exact", "tsp_brute_force", "tour_edges", "all_tours"]

MAX_DP_NODES = 18


def _scaled_matrix(n: int, costs: Mapping[Edge, Fraction]) -> tuple[list[list[int]], int]:
    den = 1
    for i in range(n):
        for j in range(i + 1, n):
            den = lcm(den, Fraction(costs[(i, j)]).denominator)
    mat = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            c = Fraction(costs[(i, j)])
            if c < 0:
                raise ValueError(f"negative cost on edge {(i, j)}")
            v = int(c * den)
            mat[i][j] = mat[j][i] = v
    return mat, den


def tsp_exact(n: int, costs: Mapping[Edge, Fraction]) -> Fraction:
    """Optimal tour value by the subset dynamic program (n <= 18)."""
    if n > MAX_DP_NODES:
        raise ValueError(f"n too large (n={n} > {MAX_DP_NODES})")
    if n < 3:
        raise ValueError("a tour needs at least 3 nodes")
    mat, den = _scaled_matrix(n, costs)

    # states: subsets of {1..n-1} (bit k <-> node k+1), best path 0 -> last
    size = 1 << (n - 1)
    INF = None
    dp = [[INF] * (n - 1) for _ in range(size)]
    for k in range(n - 1):
        dp[1 << k][k] = mat[0][k + 1]
    for mask in range(size):
        row = dp[mask]
        for last in range(n - 1):
            cur = row[last]
            if cur is INF or not (mask >> last) & 1:
                continue
            mlast = mat[last + 1]
            for nxt in range(n - 1):
                if (mask >> nxt) & 1:
                    continue
                cand = cur + mlast[nxt + 1]
                tgt = dp[mask | (1 << nxt)]
                if tgt[nxt] is INF or cand < tgt[nxt]:
                    tgt[nxt] = cand
    full = size - 1
    best = None
    for last in range(n - 1):
        v = dp[full][last]
        if v is not INF:
            total = v + mat[last + 1][0]
            if best is None or total < best:
                best = total
    assert best is not None
    return Fraction(best, den)


def tsp_brute_force(n: int, costs: Mapping[Edge, Fraction]) -> Fraction:
    """Minimum over all (n-1)!/2 tours; the independent oracle."""
    if n < 3:
        raise ValueError("a tour needs at least 3 nodes")
    best: Fraction | None = None
    for seq in all_tours(n):
        total = sum(
            (Fraction(costs[e]) for e in tour_edges(seq)), Fraction(0)
        )
        if best is None or total < best:
            best = total
    assert best is not None
    return best


def tour_edges(seq: tuple[int, ...]) -> list[Edge]:
    """Edges of the closed tour visiting seq in order."""
    return [edge(a, b) for a, b in zip(seq, seq[1:] + (seq[0],))]


def all_tours(n: int):
    """Node sequences of all tours, one per direction class (starts at 0)."""
    for rest in permutations(range(1, n)):
        if rest[0] < rest[-1]:
            yield (0,) + rest
