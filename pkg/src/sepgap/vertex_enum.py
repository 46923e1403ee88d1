"""Small-n vertex enumeration for the subtour-elimination polytope.

The degree equations are eliminated first: a spanning connected subgraph
with one odd cycle (a triangle plus a path) has an invertible node-edge
system, so its edge values are affine functions of the remaining "free"
edges.  The polytope then lives in the free-edge box [0, 1]^f, cut by the
dependent-edge bounds and the subtour rows, and its vertices are built by
the double description method: start from the box corners and add one
inequality at a time, generating each new vertex from an adjacent
(kept, cut) pair.  Adjacency uses the standard combinatorial test over
exact tight sets; every new vertex gets its tight set recomputed exactly,
which keeps heavy degeneracy safe.

Everything is rational end to end.  Only n <= 6 is supported: beyond that
the paper-scale lists come from external files, not from this oracle.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .canonical import canonical_form
from .graphs import SepPoint, all_edges, edge
from .polytope import is_vertex

__all__ = ["enumerate_sep_vertices", "enumerate_sep_vertices_labeled"]

MAX_ENUMERATION_NODES = 6


def _dependent_edges(n: int) -> list[tuple[int, int]]:
    tri = [(0, 1), (1, 2), (0, 2)]
    chain = [(k, k + 1) for k in range(2, n - 1)]
    return tri + chain


def _solve_square(a: list[list[Fraction]], rhs_cols: list[list[Fraction]]) -> list[list[Fraction]]:
    """Solve A X = B for X, with B given column-wise; returns X column-wise."""
    m = len(a)
    aug = [row[:] + [col[i] for col in rhs_cols] for i, row in enumerate(a)]
    for c in range(m):
        piv = next(r for r in range(c, m) if aug[r][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [v / pv for v in aug[c]]
        for r in range(m):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[c])]
    return [[aug[i][m + k] for i in range(m)] for k in range(len(rhs_cols))]


def _double_description(
    f: int, extra: list[tuple[list[Fraction], Fraction]]
) -> list[tuple[Fraction, ...]]:
    """Vertices of { t in [0,1]^f : a.t >= beta for (a, beta) in extra }."""
    # constraint ids: 2k (t_k >= 0), 2k+1 (-t_k >= -1), then the extras
    def box_rows():
        for k in range(f):
            row = [Fraction(0)] * f
            row[k] = Fraction(1)
            yield (row[:], Fraction(0))
            row[k] = Fraction(-1)
            yield (row[:], Fraction(-1))

    all_rows = list(box_rows()) + [(list(a), Fraction(b)) for a, b in extra]

    def value(row_id: int, t: tuple[Fraction, ...]) -> Fraction:
        a, b = all_rows[row_id]
        return sum((ai * ti for ai, ti in zip(a, t) if ai), Fraction(0)) - b

    verts: list[tuple[Fraction, ...]] = []
    tights: list[int] = []  # bitmask over constraint ids
    for bits in range(1 << f):
        t = tuple(Fraction((bits >> k) & 1) for k in range(f))
        mask = 0
        for k in range(f):
            mask |= 1 << (2 * k + ((bits >> k) & 1))
        verts.append(t)
        tights.append(mask)

    n_box = 2 * f
    for cid in range(n_box, len(all_rows)):
        vals = [value(cid, t) for t in verts]
        if all(v >= 0 for v in vals):
            for i, v in enumerate(vals):
                if v == 0:
                    tights[i] |= 1 << cid
            continue
        keep_idx = [i for i, v in enumerate(vals) if v >= 0]
        pos_idx = [i for i, v in enumerate(vals) if v > 0]
        neg_idx = [i for i, v in enumerate(vals) if v < 0]
        new_pts: dict[tuple[Fraction, ...], int] = {}
        for p in pos_idx:
            tp = tights[p]
            for q in neg_idx:
                common = tp & tights[q]
                if common.bit_count() < f - 1:
                    continue
                # combinatorial adjacency: no third vertex is tight on all
                # the common constraints
                adjacent = True
                for w in range(len(verts)):
                    if w != p and w != q and (tights[w] & common) == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vp, vq = vals[p], vals[q]
                tnew = tuple(
                    (vp * bq - vq * bp) / (vp - vq)
                    for bp, bq in zip(verts[p], verts[q])
                )
                if tnew not in new_pts:
                    new_pts[tnew] = 1
        next_verts: list[tuple[Fraction, ...]] = []
        next_tights: list[int] = []
        for i in keep_idx:
            next_verts.append(verts[i])
            next_tights.append(tights[i] | ((1 << cid) if vals[i] == 0 else 0))
        seen = set(next_verts)
        for tnew in new_pts:
            if tnew in seen:
                continue
            mask = 0
            for rid in range(cid + 1):
                if value(rid, tnew) == 0:
                    mask |= 1 << rid
            next_verts.append(tnew)
            next_tights.append(mask)
            seen.add(tnew)
        verts, tights = next_verts, next_tights
    return verts


def enumerate_sep_vertices_labeled(n: int) -> list[SepPoint]:
    """Every labeled vertex of the n-node polytope, deterministically sorted."""
    if n < 3:
        raise ValueError("the polytope needs at least 3 nodes")
    if n > MAX_ENUMERATION_NODES:
        raise ValueError(
            f"n too large for enumeration oracle (n={n} > {MAX_ENUMERATION_NODES})"
        )
    edges = all_edges(n)
    dep = [edge(*e) for e in _dependent_edges(n)]
    dep_set = set(dep)
    free = [e for e in edges if e not in dep_set]
    f = len(free)

    # x_dep = const + M t  from the degree equations
    a_dep = [[Fraction(1) if v in d else Fraction(0) for d in dep] for v in range(n)]
    rhs_cols: list[list[Fraction]] = [[Fraction(2)] * n]
    for e in free:
        rhs_cols.append([Fraction(-1) if v in e else Fraction(0) for v in range(n)])
    sols = _solve_square(a_dep, rhs_cols)
    const = sols[0]
    m_cols = sols[1:]  # one column per free edge

    def dep_row(idx: int) -> tuple[list[Fraction], Fraction]:
        """coefficients of x_dep[idx] as an affine map of t."""
        return [m_cols[k][idx] for k in range(f)], const[idx]

    extra: list[tuple[list[Fraction], Fraction]] = []
    for idx in range(len(dep)):
        coeffs, c0 = dep_row(idx)
        extra.append((coeffs, -c0))                      # x >= 0
        extra.append(([-v for v in coeffs], c0 - 1))     # x <= 1
    for size in range(3, n - 2):
        for tail in combinations(range(1, n), size - 1):
            subset = frozenset((0,) + tail)
            coeffs = [Fraction(0)] * f
            rhs = Fraction(2)
            for k, e in enumerate(free):
                if (e[0] in subset) != (e[1] in subset):
                    coeffs[k] += 1
            for idx, d in enumerate(dep):
                if (d[0] in subset) != (d[1] in subset):
                    row, c0 = dep_row(idx)
                    coeffs = [a + b for a, b in zip(coeffs, row)]
                    rhs -= c0
            extra.append((coeffs, rhs))

    points = []
    for t in _double_description(f, extra):
        weights = {}
        for k, e in enumerate(free):
            if t[k]:
                weights[e] = t[k]
        for idx, d in enumerate(dep):
            v = const[idx] + sum(
                (m_cols[k][idx] * t[k] for k in range(f)), Fraction(0)
            )
            if v:
                weights[d] = v
        points.append(SepPoint(n, weights))
    points.sort(key=lambda p: tuple(p.items()))
    return points


def enumerate_sep_vertices(n: int) -> list[SepPoint]:
    """All vertices up to isomorphism, each double-checked by the rank test."""
    classes: dict = {}
    for p in enumerate_sep_vertices_labeled(n):
        cf = canonical_form(p.support())
        if cf not in classes:
            classes[cf] = p
    reps = [classes[cf] for cf in sorted(classes, key=lambda c: c.sort_key())]
    for p in reps:
        report = is_vertex(p)
        assert report.is_vertex, f"enumeration produced a non-vertex: {p}"
    return reps
