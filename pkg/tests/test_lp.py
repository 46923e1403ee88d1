from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import pytest

from sepgap.lp import (
    LinearProgram,
    LpInfeasibleError,
    LpUnboundedError,
    simplex_solve,
    verify_farkas_certificate,
    verify_unbounded_ray,
)


def test_one_variable_floor():
    lp = LinearProgram(1, [Fraction(1)], "min")
    lp.add_constraint({0: 1}, ">=", 1)
    sol = simplex_solve(lp)
    assert sol.primal == (1,)
    assert sol.objective_value == 1
    assert sol.duals == (1,)
    assert sol.tight == (True,)


def test_symmetric_degenerate_optimum():
    lp = LinearProgram(2, [Fraction(1), Fraction(1)], "min")
    lp.add_constraint({0: 1, 1: 1}, ">=", 1)
    sol = simplex_solve(lp)
    assert sol.objective_value == 1
    assert sol.duals == (1,)
    assert sum(sol.primal) == 1 and all(v >= 0 for v in sol.primal)


def test_max_sense_with_slack_basis():
    lp = LinearProgram(2, [3, 5], "max")
    lp.add_constraint({0: 1}, "<=", 4)
    lp.add_constraint({1: 2}, "<=", 12)
    lp.add_constraint({0: 3, 1: 2}, "<=", 18)
    sol = simplex_solve(lp)
    assert sol.objective_value == 36
    assert sol.primal == (2, 6)
    assert sol.duals == (0, Fraction(3, 2), 1)


def test_equality_rows_and_free_duals():
    lp = LinearProgram(2, [1, 2], "min")
    lp.add_constraint({0: 1, 1: 1}, "=", 3)
    lp.add_constraint({0: 1, 1: -1}, "=", 1)
    sol = simplex_solve(lp)
    assert sol.primal == (2, 1)
    assert sol.objective_value == 4


def test_lower_bounds_shift():
    lp = LinearProgram(
        2, [1, 1], "min", lower_bounds=[Fraction(2), Fraction(-1)]
    )
    lp.add_constraint({0: 1, 1: 1}, ">=", 0)
    sol = simplex_solve(lp)
    assert sol.primal == (2, -1)
    assert sol.objective_value == 1


def test_infeasible_with_farkas_certificate():
    lp = LinearProgram(2, [1, 1], "min")
    lp.add_constraint({0: 1, 1: 1}, "<=", 1)
    lp.add_constraint({0: 1, 1: 1}, ">=", 2)
    with pytest.raises(LpInfeasibleError) as err:
        simplex_solve(lp)
    assert verify_farkas_certificate(lp, err.value.duals) > 0


def test_infeasible_equality_system():
    lp = LinearProgram(1, [1], "min")
    lp.add_constraint({0: 1}, "=", -3)
    with pytest.raises(LpInfeasibleError) as err:
        simplex_solve(lp)
    assert verify_farkas_certificate(lp, err.value.duals) > 0


def test_unbounded_with_certified_ray():
    lp = LinearProgram(2, [-1, 0], "min")
    lp.add_constraint({0: -1, 1: 1}, "<=", 1)
    with pytest.raises(LpUnboundedError) as err:
        simplex_solve(lp)
    verify_unbounded_ray(lp, err.value.ray)


def test_unbounded_max():
    lp = LinearProgram(1, [1], "max")
    lp.add_constraint({0: -1}, "<=", 0)
    with pytest.raises(LpUnboundedError) as err:
        simplex_solve(lp)
    verify_unbounded_ray(lp, err.value.ray)


def test_redundant_rows_are_harmless():
    lp = LinearProgram(2, [1, 1], "min")
    lp.add_constraint({0: 1, 1: 1}, "=", 2)
    lp.add_constraint({0: 2, 1: 2}, "=", 4)  # dependent copy
    lp.add_constraint({0: 1}, ">=", 0)
    sol = simplex_solve(lp)
    assert sol.objective_value == 2


def _brute_force_optimum(lp: LinearProgram):
    """Vertex enumeration oracle: try every potential basis of tight rows."""
    rows = [({j: Fraction(v) for j, v in c.coeffs.items()}, c.relation, c.rhs)
            for c in lp.constraints]
    # add bound rows x_j >= lb_j
    for j in range(lp.n_vars):
        rows.append(({j: Fraction(1)}, ">=", lp.lower_bounds[j]))
    best = None
    n = lp.n_vars
    for subset in combinations(range(len(rows)), n):
        mat = [[rows[r][0].get(j, Fraction(0)) for j in range(n)] for r in subset]
        rhs = [rows[r][2] for r in subset]
        sol = _solve_linear(mat, rhs)
        if sol is None:
            continue
        feasible = True
        for coeffs, rel, b in rows:
            act = sum((v * sol[j] for j, v in coeffs.items()), Fraction(0))
            if rel == ">=" and act < b:
                feasible = False
            if rel == "<=" and act > b:
                feasible = False
            if rel == "=" and act != b:
                feasible = False
            if not feasible:
                break
        if not feasible:
            continue
        val = sum((c * v for c, v in zip(lp.objective, sol)), Fraction(0))
        if best is None or (val < best if lp.sense == "min" else val > best):
            best = val
    return best


def _solve_linear(mat, rhs):
    n = len(mat)
    aug = [row[:] + [rhs[i]] for i, row in enumerate(mat)]
    cols = len(mat[0]) if mat else 0
    if n != cols:
        return None
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            return None
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [v / pv for v in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[c])]
    return [aug[r][n] for r in range(n)]


def test_random_lps_match_basis_enumeration():
    rng = random.Random(31)
    solved = 0
    for _ in range(60):
        n = rng.randint(1, 3)
        lp = LinearProgram(
            n,
            [Fraction(rng.randint(-4, 4)) for _ in range(n)],
            rng.choice(["min", "max"]),
        )
        for _ in range(rng.randint(1, 4)):
            coeffs = {j: Fraction(rng.randint(-3, 3)) for j in range(n)}
            coeffs = {j: v for j, v in coeffs.items() if v}
            if not coeffs:
                continue
            lp.add_constraint(coeffs, rng.choice(["<=", ">=", "="]),
                              Fraction(rng.randint(-5, 5)))
        # bound the box so unboundedness cannot occur
        for j in range(n):
            lp.add_constraint({j: 1}, "<=", 10)
        try:
            sol = simplex_solve(lp)
        except LpInfeasibleError as err:
            assert verify_farkas_certificate(lp, err.duals) > 0
            assert _brute_force_optimum(lp) is None
            continue
        oracle = _brute_force_optimum(lp)
        assert oracle == sol.objective_value
        solved += 1
    assert solved > 10


def test_three_row_restricted_model_hand_solved(prism):
    # three fixed walks on the prism: the doubled spanning star around the
    # triangle, and two tours; maximise total weight under the edge loads
    from sepgap.walks import Walk
    g = prism.support()
    tours = [
        Walk.from_dict(6, {(0, 1): 1, (1, 2): 1, (2, 5): 1, (4, 5): 1, (3, 4): 1, (0, 3): 1}),
        Walk.from_dict(6, {(0, 2): 1, (1, 2): 1, (1, 4): 1, (4, 5): 1, (3, 5): 1, (0, 3): 1}),
        Walk.from_dict(6, {(0, 1): 1, (0, 2): 1, (2, 5): 1, (3, 5): 1, (3, 4): 1, (1, 4): 1}),
    ]
    lp = LinearProgram(3, [1, 1, 1], "max")
    for e in prism.edges:
        coeffs = {i: Fraction(w.multiplicity(e)) for i, w in enumerate(tours)
                  if w.multiplicity(e)}
        lp.add_constraint(coeffs, "<=", prism.weight(e))
    sol = simplex_solve(lp)
    assert sol.objective_value == _brute_force_optimum(lp)
    # every 1/2 edge is used by exactly two of these tours: mu = 1/4 each
    assert sol.objective_value == Fraction(3, 4)
