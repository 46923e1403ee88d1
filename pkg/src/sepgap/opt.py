"""The walk-constrained cost LP for a relaxation vertex and its duals.

For a vertex x, the quantity of interest is the least total weighted cost
``sum_e x_e c_e`` over nonnegative support costs c whose every closed
spanning walk costs at least 1; its reciprocal is the worst tour/relaxation
ratio over metrics (with c.x in the denominator).  The LP is solved by row
generation: walk rows are added on demand, each round separating with the
exact min-cost-walk search, until the cheapest walk already costs 1.  The
duals of the final restricted model are a sparse assignment of nonnegative
weights mu to walks, supported on tight rows only, with sum mu equal to the
optimum: exactly the data the gap-bounding constants need.

``solve_opt_plus_full`` solves the same value through the full metric-cost
model on K_n (triangle rows and one row per tour) for n <= 8.  The two
routes agree on every vertex and cross-check each other in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .graphs import Edge, SepPoint, WeightedGraph, edge
from .lp import LinearProgram, simplex_solve
from .tsp import all_tours, tour_edges
from .walk_opt import min_cost_walk
from .walks import Walk, doubled_tree_walk, extend_walk, is_valid_walk

__all__ = [
    "DualAssignment",
    "TriangleMultiplier",
    "RowGenerationStalledError",
    "solve_opt2",
    "solve_opt_plus_full",
    "verify_dual_feasible",
    "lift_dual_assignment",
]

MAX_FULL_MODEL_NODES = 8


@dataclass(frozen=True)
class DualAssignment:
    """Sparse nonnegative weights on walks (zero entries never stored)."""

    n: int
    mu: tuple[tuple[Walk, Fraction], ...]

    @staticmethod
    def from_dict(n: int, mu: Mapping[Walk, Fraction]) -> "DualAssignment":
        items = []
        for w, v in mu.items():
            v = Fraction(v)
            if v < 0:
                raise ValueError(f"negative dual weight {v}")
            if v > 0:
                items.append((w, v))
        items.sort(key=lambda p: p[0].mult)
        return DualAssignment(n, tuple(items))

    def total(self) -> Fraction:
        return sum((v for _, v in self.mu), Fraction(0))

    def walks(self) -> tuple[Walk, ...]:
        return tuple(w for w, _ in self.mu)

    def edge_load(self, e: Edge) -> Fraction:
        """sum_w w_e mu_w for one edge."""
        e = edge(*e)
        return sum((Fraction(w.multiplicity(e)) * v for w, v in self.mu), Fraction(0))

    def as_dict(self) -> dict[Walk, Fraction]:
        return dict(self.mu)


@dataclass(frozen=True)
class TriangleMultiplier:
    """Multiplier of the triangle row c_ik + c_jk >= c_ij.

    The first pair is unordered ((i,j,k) and (j,i,k) name the same row);
    the apex k is not interchangeable with i or j.
    """

    i: int
    j: int
    k: int
    value: Fraction

    def __post_init__(self):
        if len({self.i, self.j, self.k}) != 3:
            raise ValueError("triangle needs three distinct nodes")
        if self.i > self.j:
            lo, hi = self.j, self.i
            object.__setattr__(self, "i", lo)
            object.__setattr__(self, "j", hi)


class RowGenerationStalledError(RuntimeError):
    """Separation returned an already-present row; indicates a solver bug."""


def _restricted_dual_model(x: SepPoint, walks: list[Walk]) -> LinearProgram:
    support = x.edges
    lp = LinearProgram(
        n_vars=len(walks),
        objective=[Fraction(1)] * len(walks),
        sense="max",
    )
    for e in support:
        coeffs = {
            idx: Fraction(w.multiplicity(e))
            for idx, w in enumerate(walks)
            if w.multiplicity(e)
        }
        lp.add_constraint(coeffs, "<=", x.weight(e))
    return lp


def solve_opt2(
    x: SepPoint,
    initial_walks: Iterable[Walk] = (),
) -> tuple[Fraction, dict[Edge, Fraction], DualAssignment]:
    """Row generation for the walk-constrained cost LP on the support of x.

    Returns (optimal value, optimal support costs c, optimal dual walk
    weights mu).  At exit the cheapest walk under c costs at least 1, every
    mu-supported walk costs exactly 1, and sum mu equals the value.
    """
    g = x.support()
    if not g.is_connected():
        raise ValueError("support graph is disconnected")
    walks: list[Walk] = []
    seen: set[Walk] = set()

    def add(w: Walk) -> None:
        if w not in seen:
            ok, why = is_valid_walk(g, w)
            if not ok:
                raise ValueError(f"initial walk invalid: {why}")
            seen.add(w)
            walks.append(w)

    add(doubled_tree_walk(g))
    if all(g.degree(v) % 2 == 0 for v in range(g.n)):
        add(Walk.from_dict(g.n, {e: 1 for e in g.edges}))
    for w in initial_walks:
        add(w)

    while True:
        sol = simplex_solve(_restricted_dual_model(x, walks))
        costs = {e: sol.duals[i] for i, e in enumerate(x.edges)}
        best_walk, best_cost = min_cost_walk(g, costs)
        if best_cost >= 1:
            break
        if best_walk in seen:
            raise RowGenerationStalledError(
                f"separation repeated a known row (cost {best_cost})"
            )
        seen.add(best_walk)
        walks.append(best_walk)

    mu = {w: sol.primal[i] for i, w in enumerate(walks) if sol.primal[i] > 0}
    assignment = DualAssignment.from_dict(x.n, mu)
    value = sol.objective_value
    assert assignment.total() == value
    for w, v in assignment.mu:
        assert w.cost(costs) == 1, "supported walk not at cost 1"
    return value, costs, assignment


def verify_dual_feasible(
    x: SepPoint, mu: DualAssignment
) -> tuple[bool, Edge | None, Fraction | None]:
    """Check sum_w w_e mu_w <= x_e on every support edge.

    Returns (ok, violated edge, excess) with the first violation in edge
    order.  Walks must live on the support graph of x.
    """
    g = x.support()
    for w, _ in mu.mu:
        ok, why = is_valid_walk(g, w)
        if not ok:
            raise ValueError(f"walk not on the support graph: {why}")
    load: dict[Edge, Fraction] = {e: Fraction(0) for e in x.edges}
    for w, v in mu.mu:
        for e, m in w.mult:
            load[e] += m * v
    for e in x.edges:
        if load[e] > x.weight(e):
            return False, e, load[e] - x.weight(e)
    return True, None, None


def lift_dual_assignment(
    mu: DualAssignment, x: SepPoint, e: Edge, d: int
) -> DualAssignment:
    """Push a dual assignment through the expansion of the 1-edge e.

    A walk skipping e spawns its d+1 deviation variants at 1/(d+1) of the
    weight each; a walk crossing e once or twice is rerouted at full weight.
    The total is preserved exactly and every off-path edge keeps its load.
    """
    e = edge(*e)
    if x.weight(e) != 1:
        raise ValueError(f"edge {e} is not a 1-edge of x")
    out: dict[Walk, Fraction] = {}
    for w, v in mu.mu:
        m = w.multiplicity(e)
        if m == 0:
            share = v / (d + 1)
            for k in range(d + 1):
                lifted = extend_walk(w, e, d, 0, k)
                out[lifted] = out.get(lifted, Fraction(0)) + share
        else:
            lifted = extend_walk(w, e, d, m)
            out[lifted] = out.get(lifted, Fraction(0)) + v
    result = DualAssignment.from_dict(x.n + d, out)
    assert result.total() == mu.total()
    return result


def _triangle_rows(n: int) -> list[tuple[int, int, int]]:
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                if k != i and k != j:
                    rows.append((i, j, k))
    return rows


def solve_opt_plus_full(
    x: SepPoint, with_costs: bool = False
) -> Fraction | tuple[Fraction, dict[Edge, Fraction]]:
    """The metric-cost value of x through the full K_n model (n <= 8).

    Every triangle row and every tour row is materialised: the model solved
    carries one column per tour and per triangle multiplier, and the optimal
    metric extracted from the row duals is checked against each primal row
    before the value is returned.
    """
    n = x.n
    if n > MAX_FULL_MODEL_NODES:
        raise ValueError(f"n too large for full model (n={n} > {MAX_FULL_MODEL_NODES})")
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    eidx = {e: r for r, e in enumerate(edges)}
    tours = list(all_tours(n))
    triangles = _triangle_rows(n)

    n_cols = len(tours) + len(triangles)
    lp = LinearProgram(
        n_vars=n_cols,
        objective=[Fraction(1)] * len(tours) + [Fraction(0)] * len(triangles),
        sense="max",
    )
    rows: list[dict[int, Fraction]] = [dict() for _ in edges]
    for t_idx, seq in enumerate(tours):
        for e in tour_edges(seq):
            rows[eidx[e]][t_idx] = Fraction(1)
    for l_idx, (i, j, k) in enumerate(triangles):
        col = len(tours) + l_idx
        rows[eidx[edge(i, j)]][col] = rows[eidx[edge(i, j)]].get(col, Fraction(0)) - 1
        rows[eidx[edge(i, k)]][col] = rows[eidx[edge(i, k)]].get(col, Fraction(0)) + 1
        rows[eidx[edge(j, k)]][col] = rows[eidx[edge(j, k)]].get(col, Fraction(0)) + 1
    for r, e in enumerate(edges):
        lp.add_constraint(rows[r], "<=", x.weight(e))

    sol = simplex_solve(lp)
    value = sol.objective_value
    costs = {e: sol.duals[r] for r, e in enumerate(edges)}

    # the extracted metric must satisfy every row of the cost model exactly
    for e in edges:
        assert costs[e] >= 0
    for (i, j, k) in triangles:
        assert costs[edge(i, k)] + costs[edge(j, k)] >= costs[edge(i, j)], \
            "triangle row violated by extracted costs"
    for seq in tours:
        assert sum((costs[e] for e in tour_edges(seq)), Fraction(0)) >= 1, \
            "tour row violated by extracted costs"
    assert sum((costs[e] * x.weight(e) for e in edges), Fraction(0)) == value

    if with_costs:
        return value, costs
    return value
