"""Exact rational linear programming with certified duals.

Revised simplex over Fractions.  Entering columns follow the largest
reduced-cost rule until a run of degenerate pivots, then switch permanently
to Bland's rule, which guarantees finite termination without perturbation.
Every optimal solve is certified in-place: primal feasibility, dual sign
conditions, complementary slackness, and exact equality of the primal and
dual objective values are all asserted before returning.  Infeasibility and
unboundedness raise exceptions carrying exact certificates (a Farkas row
combination, respectively an improving feasible ray).

Models here have few rows and possibly thousands of columns, so the matrix
is stored column-wise and sparsely.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

__all__ = [
    "LinearProgram",
    "Constraint",
    "LpSolution",
    "LpInfeasibleError",
    "LpUnboundedError",
    "simplex_solve",
    "verify_farkas_certificate",
    "verify_unbounded_ray",
]

LE, GE, EQ = "<=", ">=", "="
_DEGENERATE_SWITCH = 50
_MAX_ITERATIONS = 500_000


@dataclass(frozen=True)
class Constraint:
    coeffs: dict[int, Fraction]
    relation: str
    rhs: Fraction

    def __post_init__(self):
        if self.relation not in (LE, GE, EQ):
            raise ValueError(f"unknown relation {self.relation!r}")

    def activity(self, x: Sequence[Fraction]) -> Fraction:
        return sum((v * x[j] for j, v in self.coeffs.items()), Fraction(0))


def _sparse(coeffs: Mapping[int, Fraction] | Sequence[Fraction]) -> dict[int, Fraction]:
    if isinstance(coeffs, Mapping):
        items = coeffs.items()
    else:
        items = enumerate(coeffs)
    return {j: Fraction(v) for j, v in items if v != 0}


@dataclass
class LinearProgram:
    """min/max objective . x subject to rows (coeffs relation rhs), x >= lb."""

    n_vars: int
    objective: list[Fraction]
    sense: str = "min"
    constraints: list[Constraint] = field(default_factory=list)
    lower_bounds: list[Fraction] | None = None

    def __post_init__(self):
        if self.sense not in ("min", "max"):
            raise ValueError(f"sense must be 'min' or 'max', got {self.sense!r}")
        self.objective = [Fraction(c) for c in self.objective]
        if len(self.objective) != self.n_vars:
            raise ValueError("objective length != n_vars")
        if self.lower_bounds is None:
            self.lower_bounds = [Fraction(0)] * self.n_vars
        else:
            self.lower_bounds = [Fraction(b) for b in self.lower_bounds]

    def add_constraint(self, coeffs, relation: str, rhs) -> None:
        self.constraints.append(Constraint(_sparse(coeffs), relation, Fraction(rhs)))


@dataclass(frozen=True)
class LpSolution:
    primal: tuple[Fraction, ...]
    objective_value: Fraction
    duals: tuple[Fraction, ...]
    tight: tuple[bool, ...]
    reduced_costs: tuple[Fraction, ...]


class LpInfeasibleError(Exception):
    """No feasible point; ``duals`` is an exact Farkas certificate."""

    def __init__(self, duals: tuple[Fraction, ...], gap: Fraction):
        super().__init__(f"infeasible (certified, gap {gap})")
        self.duals = duals
        self.gap = gap


class LpUnboundedError(Exception):
    """Objective unbounded; ``ray`` is an exact improving feasible direction."""

    def __init__(self, ray: tuple[Fraction, ...]):
        super().__init__("unbounded (certified ray)")
        self.ray = ray


def verify_farkas_certificate(lp: LinearProgram, duals: Sequence[Fraction]) -> Fraction:
    """Return the positive infeasibility gap proved by the multipliers.

    The multipliers must be sign-compatible (>=0 on >= rows, <=0 on <= rows)
    and combine the rows into sum_j g_j x_j >= gamma with g <= 0, which no
    x >= lb can satisfy when g . lb < gamma.  Raises if any condition fails.
    """
    combined = [Fraction(0)] * lp.n_vars
    gamma = Fraction(0)
    for u, con in zip(duals, lp.constraints):
        if con.relation == GE and u < 0:
            raise ValueError("negative multiplier on >= row")
        if con.relation == LE and u > 0:
            raise ValueError("positive multiplier on <= row")
        for j, v in con.coeffs.items():
            combined[j] += u * v
        gamma += u * con.rhs
    if any(gj > 0 for gj in combined):
        raise ValueError("combined row has a positive coefficient")
    attained = sum((gj * lb for gj, lb in zip(combined, lp.lower_bounds)), Fraction(0))
    gap = gamma - attained
    if gap <= 0:
        raise ValueError("certificate proves nothing (gap <= 0)")
    return gap


def verify_unbounded_ray(lp: LinearProgram, ray: Sequence[Fraction]) -> None:
    """Check that ray is a feasible direction strictly improving the objective."""
    if any(r < 0 for r in ray):
        raise ValueError("ray leaves the variable bounds")
    for con in lp.constraints:
        act = sum((v * ray[j] for j, v in con.coeffs.items()), Fraction(0))
        if con.relation == GE and act < 0:
            raise ValueError("ray violates a >= row")
        if con.relation == LE and act > 0:
            raise ValueError("ray violates a <= row")
        if con.relation == EQ and act != 0:
            raise ValueError("ray violates an = row")
    rate = sum((c * r for c, r in zip(lp.objective, ray)), Fraction(0))
    if lp.sense == "min" and rate >= 0:
        raise ValueError("ray does not decrease a minimisation objective")
    if lp.sense == "max" and rate <= 0:
        raise ValueError("ray does not increase a maximisation objective")


class _Tableau:
    """Equality-form working problem: min c.z, Az = b, z >= 0, b >= 0."""

    def __init__(self, lp: LinearProgram):
        self.lp = lp
        n = lp.n_vars
        minimize = lp.sense == "min"
        self.obj_sign = 1 if minimize else -1
        self.shift = list(lp.lower_bounds)

        # normalised rows: coeffs, rhs >= 0, flip sign remembered per row
        self.row_flip: list[int] = []
        self.row_ids: list[int] = []  # original constraint index per active row
        cols: list[dict[int, Fraction]] = [dict() for _ in range(n)]
        costs = [self.obj_sign * c for c in lp.objective]
        kinds = ["x"] * n
        b: list[Fraction] = []
        slack_of_row: list[int | None] = []
        art_of_row: list[int | None] = []
        for idx, con in enumerate(lp.constraints):
            rhs = con.rhs - sum(
                (v * self.shift[j] for j, v in con.coeffs.items()), Fraction(0)
            )
            rel = con.relation
            flip = 1
            if rhs < 0:
                flip = -1
                rhs = -rhs
                rel = {LE: GE, GE: LE, EQ: EQ}[rel]
            r = len(b)
            self.row_flip.append(flip)
            self.row_ids.append(idx)
            for j, v in con.coeffs.items():
                if v:
                    cols[j][r] = flip * v
            b.append(rhs)
            if rel == LE:
                cols.append({r: Fraction(1)})
                costs.append(Fraction(0))
                kinds.append("s")
                slack_of_row.append(len(cols) - 1)
                art_of_row.append(None)
            elif rel == GE:
                cols.append({r: Fraction(-1)})
                costs.append(Fraction(0))
                kinds.append("s")
                slack_of_row.append(len(cols) - 1)
                art_of_row.append(None)
            else:
                slack_of_row.append(None)
                art_of_row.append(None)
        # artificials: for = rows always, for >= rows (surplus cannot start basic)
        for r, idx in enumerate(self.row_ids):
            rel = self.lp.constraints[idx].relation
            eff = rel if self.row_flip[r] == 1 else {LE: GE, GE: LE, EQ: EQ}[rel]
            if eff == EQ or eff == GE:
                cols.append({r: Fraction(1)})
                costs.append(Fraction(0))
                kinds.append("a")
                art_of_row[r] = len(cols) - 1

        self.cols = cols
        self.costs = costs
        self.kinds = kinds
        self.b = b
        self.m = len(b)
        self.slack_of_row = slack_of_row
        self.art_of_row = art_of_row

    # --- basis machinery ------------------------------------------------

    def start_basis(self) -> None:
        self.basis = []
        for r in range(self.m):
            j = self.art_of_row[r]
            if j is None:
                j = self.slack_of_row[r]
            self.basis.append(j)
        self.in_basis = set(self.basis)
        self.binv = [
            [Fraction(1) if i == j else Fraction(0) for j in range(self.m)]
            for i in range(self.m)
        ]
        self.xb = list(self.b)

    def column(self, j: int) -> dict[int, Fraction]:
        return self.cols[j]

    def ftran(self, j: int) -> list[Fraction]:
        col = self.cols[j]
        d = [Fraction(0)] * self.m
        for i, v in col.items():
            if v:
                row = self.binv
                for r in range(self.m):
                    d[r] += row[r][i] * v
        return d

    def duals_for(self, costs: list[Fraction]) -> list[Fraction]:
        y = [Fraction(0)] * self.m
        for r in range(self.m):
            cb = costs[self.basis[r]]
            if cb:
                br = self.binv[r]
                for i in range(self.m):
                    y[i] += cb * br[i]
        return y

    def reduced_cost(self, j: int, y: list[Fraction], costs: list[Fraction]) -> Fraction:
        rc = costs[j]
        for i, v in self.cols[j].items():
            rc -= y[i] * v
        return rc

    def pivot(self, enter: int, leave_row: int, d: list[Fraction]) -> None:
        piv = d[leave_row]
        binv = self.binv
        t = self.xb[leave_row] / piv
        lr = binv[leave_row]
        binv[leave_row] = [v / piv for v in lr]
        lr = binv[leave_row]
        for r in range(self.m):
            if r == leave_row:
                continue
            dr = d[r]
            if dr:
                row = binv[r]
                binv[r] = [a - dr * bnew for a, bnew in zip(row, lr)]
                self.xb[r] -= dr * t
        self.xb[leave_row] = t
        self.in_basis.discard(self.basis[leave_row])
        self.basis[leave_row] = enter
        self.in_basis.add(enter)

    def run(self, costs: list[Fraction], allowed) -> None:
        """Minimise costs over the current basis; raises on unboundedness."""
        bland = False
        degen_run = 0
        for _ in range(_MAX_ITERATIONS):
            y = self.duals_for(costs)
            enter = None
            best_rc = Fraction(0)
            for j in range(len(self.cols)):
                if j in self.in_basis or not allowed(j):
                    continue
                rc = self.reduced_cost(j, y, costs)
                if rc < 0:
                    if bland:
                        enter = j
                        break
                    if rc < best_rc:
                        best_rc = rc
                        enter = j
            if enter is None:
                return
            d = self.ftran(enter)
            leave = None
            best_ratio = None
            for r in range(self.m):
                if d[r] > 0:
                    ratio = self.xb[r] / d[r]
                    key = (ratio, self.basis[r])
                    if best_ratio is None or key < best_ratio:
                        best_ratio = key
                        leave = r
            if leave is None:
                raise _UnboundedSignal(enter, d)
            if best_ratio[0] == 0:
                degen_run += 1
                if degen_run >= _DEGENERATE_SWITCH:
                    bland = True
            else:
                degen_run = 0
            self.pivot(enter, leave, d)
        raise RuntimeError("simplex iteration limit exceeded")


class _UnboundedSignal(Exception):
    def __init__(self, enter: int, d: list[Fraction]):
        self.enter = enter
        self.d = d


def simplex_solve(lp: LinearProgram) -> LpSolution:
    """Exact optimal basic solution with duals, or a certified exception."""
    t = _Tableau(lp)
    t.start_basis()
    n = lp.n_vars
    has_art = any(k == "a" for k in t.kinds)

    if has_art:
        phase1 = [Fraction(1) if k == "a" else Fraction(0) for k in t.kinds]
        t.run(phase1, allowed=lambda j: True)
        infeas = sum(
            (t.xb[r] for r in range(t.m) if t.kinds[t.basis[r]] == "a"),
            Fraction(0),
        )
        if infeas > 0:
            y = t.duals_for(phase1)
            duals = [Fraction(0)] * len(lp.constraints)
            for r in range(t.m):
                duals[t.row_ids[r]] = t.row_flip[r] * y[r]
            gap = verify_farkas_certificate(lp, duals)
            raise LpInfeasibleError(tuple(duals), gap)
        _drive_out_artificials(t)

    try:
        t.run(t.costs, allowed=lambda j: t.kinds[j] != "a")
    except _UnboundedSignal as sig:
        ray = [Fraction(0)] * n
        if sig.enter < n:
            ray[sig.enter] = Fraction(1)
        for r in range(t.m):
            if t.basis[r] < n and sig.d[r]:
                ray[t.basis[r]] = -sig.d[r]
        verify_unbounded_ray(lp, ray)
        raise LpUnboundedError(tuple(ray)) from None

    # primal values in original space
    x = list(lp.lower_bounds)
    for r in range(t.m):
        j = t.basis[r]
        if j < n:
            x[j] += t.xb[r]

    y = t.duals_for(t.costs)
    duals = [Fraction(0)] * len(lp.constraints)
    for r in range(t.m):
        duals[t.row_ids[r]] = t.obj_sign * t.row_flip[r] * y[r]

    # reduced costs c_j - sum_i duals_i a_ij, accumulated row-wise
    col_terms = [Fraction(0)] * n
    for idx, con in enumerate(lp.constraints):
        u = duals[idx]
        if u:
            for j, v in con.coeffs.items():
                col_terms[j] += u * v
    reduced = [lp.objective[j] - col_terms[j] for j in range(n)]

    obj = sum((c * v for c, v in zip(lp.objective, x)), Fraction(0))
    tight = tuple(con.activity(x) == con.rhs for con in lp.constraints)

    _certify(lp, x, obj, duals, reduced)
    return LpSolution(tuple(x), obj, tuple(duals), tight, tuple(reduced))


def _drive_out_artificials(t: _Tableau) -> None:
    """Pivot basic artificials (at value 0) out; drop rows that cannot be freed."""
    redundant: list[int] = []
    for r in range(t.m):
        if t.kinds[t.basis[r]] != "a":
            continue
        assert t.xb[r] == 0, "artificial basic at nonzero after phase 1"
        pivoted = False
        for j in range(len(t.cols)):
            if t.kinds[j] == "a" or j in t.in_basis:
                continue
            d = t.ftran(j)
            if d[r] != 0:
                t.pivot(j, r, d)
                pivoted = True
                break
        if not pivoted:
            redundant.append(r)
    if redundant:
        _remove_rows(t, redundant)


def _remove_rows(t: _Tableau, rows: list[int]) -> None:
    keep = [r for r in range(t.m) if r not in rows]
    remap = {old: new for new, old in enumerate(keep)}
    t.b = [t.b[r] for r in keep]
    t.row_flip = [t.row_flip[r] for r in keep]
    t.row_ids = [t.row_ids[r] for r in keep]
    t.basis = [t.basis[r] for r in keep]
    t.in_basis = set(t.basis)
    t.m = len(keep)
    new_cols = []
    for col in t.cols:
        new_cols.append({remap[i]: v for i, v in col.items() if i in remap})
    t.cols = new_cols
    # re-factorise the basis inverse from scratch
    mat = [[t.cols[t.basis[r]].get(i, Fraction(0)) for r in range(t.m)] for i in range(t.m)]
    t.binv = _invert(mat)
    t.xb = [
        sum((t.binv[r][i] * t.b[i] for i in range(t.m)), Fraction(0))
        for r in range(t.m)
    ]
    assert all(v >= 0 for v in t.xb), "basis infeasible after row removal"


def _invert(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    m = len(mat)
    a = [row[:] + [Fraction(1) if i == j else Fraction(0) for j in range(m)]
         for i, row in enumerate(mat)]
    for c in range(m):
        piv = next(r for r in range(c, m) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        pv = a[c][c]
        a[c] = [v / pv for v in a[c]]
        for r in range(m):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [v - f * w for v, w in zip(a[r], a[c])]
    return [row[m:] for row in a]


def _certify(lp, x, obj, duals, reduced) -> None:
    """Exact optimality certificate: feasibility, signs, slackness, equality."""
    for j in range(lp.n_vars):
        assert x[j] >= lp.lower_bounds[j], "primal bound violated"
    for idx, con in enumerate(lp.constraints):
        act = con.activity(x)
        if con.relation == LE:
            assert act <= con.rhs, "primal <= row violated"
        elif con.relation == GE:
            assert act >= con.rhs, "primal >= row violated"
        else:
            assert act == con.rhs, "primal = row violated"
        u = duals[idx]
        if lp.sense == "min":
            if con.relation == LE:
                assert u <= 0, "dual sign on <= row"
            if con.relation == GE:
                assert u >= 0, "dual sign on >= row"
        else:
            if con.relation == LE:
                assert u >= 0, "dual sign on <= row"
            if con.relation == GE:
                assert u <= 0, "dual sign on >= row"
        if act != con.rhs:
            assert u == 0, "complementary slackness (rows)"
    for j in range(lp.n_vars):
        rc = reduced[j]
        if lp.sense == "min":
            assert rc >= 0, "reduced cost sign (min)"
        else:
            assert rc <= 0, "reduced cost sign (max)"
        if x[j] != lp.lower_bounds[j]:
            assert rc == 0, "complementary slackness (columns)"
    dual_obj = sum(
        (duals[i] * con.rhs for i, con in enumerate(lp.constraints)), Fraction(0)
    ) + sum((reduced[j] * lp.lower_bounds[j] for j in range(lp.n_vars)), Fraction(0))
    assert dual_obj == obj, "strong duality violated"
