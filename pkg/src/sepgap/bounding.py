"""Family-wide gap bounds from one vertex: rescaling constants, the
bounding algorithm, its iterated variant, and LP-free certificate checking.

Given optimal dual walk weights mu for a vertex x, each 1-edge e gets the
constant  C(x, e) = 2*sum{mu_w : w_e = 0} + sum{mu_w : w_e = 1}
                  + 2*sum{mu_w : w_e = 2},
the exact factor by which the lifted dual assignment can overload the
constraints along the expansion of e.  With V the LP value, the quantity
C*(x)/V  (C* the largest constant) bounds the gap of every point obtained
from x by stretching 1-edges into 1-paths, of any lengths.  The iterated
variant re-runs the bound on 1-edge splits of x, keeping the best value;
splitting targets the edge with the largest constant.

Certificates carry the point, walks, mu, costs and constants verbatim, so
a verifier can re-check every claim with plain rational arithmetic: walk
validity, dual feasibility, the objective total, cost-1 tightness on
supported walks, the matching primal cost value, and the constant/bound
arithmetic.  Dual feasibility alone already makes the certified bound
sound; the remaining checks certify optimality of the recorded value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .canonical import canonical_labeling
from .graphs import Edge, SepPoint, edge
from .opt import DualAssignment, lift_dual_assignment, solve_opt2
from .polytope import bb_move
from .walks import Walk, is_valid_walk

__all__ = [
    "GapBoundResult",
    "GapBoundCertificate",
    "ConstantBelowOneError",
    "compute_C",
    "gb",
    "gbe",
    "verify_certificate",
]

_CLASS_COEFF = {0: Fraction(2), 1: Fraction(1), 2: Fraction(2)}


class ConstantBelowOneError(RuntimeError):
    """A rescaling constant below 1 contradicts monotonicity of the gap."""


@dataclass(frozen=True)
class GapBoundResult:
    gap_plus: Fraction
    constants: tuple[tuple[Edge, Fraction], ...]
    c_star: Fraction
    bound: Fraction


@dataclass(frozen=True)
class GapBoundCertificate:
    """Self-contained record of one bounding run (LP-free verifiable)."""

    point: SepPoint
    value: Fraction  # optimal LP value; gap_plus = 1/value
    costs: tuple[tuple[Edge, Fraction], ...]
    mu: tuple[tuple[Walk, Fraction], ...]
    constants: tuple[tuple[Edge, Fraction], ...]
    c_star: Fraction
    bound: Fraction
    scope: str

    @property
    def gap_plus(self) -> Fraction:
        return 1 / self.value


def compute_C(x: SepPoint, mu: DualAssignment, e: Edge) -> Fraction:
    """The rescaling constant of the 1-edge e under dual weights mu."""
    e = edge(*e)
    if x.weight(e) != 1:
        raise ValueError(f"edge {e} is not a 1-edge")
    total = Fraction(0)
    for w, v in mu.mu:
        total += _CLASS_COEFF[w.multiplicity(e)] * v
    return total


def _certificate(x, value, costs, mu, constants, c_star, bound) -> GapBoundCertificate:
    return GapBoundCertificate(
        point=x,
        value=value,
        costs=tuple(sorted(costs.items())),
        mu=mu.mu,
        constants=tuple(sorted(constants.items())),
        c_star=c_star,
        bound=bound,
        scope="all points obtained from this vertex by expanding 1-edges into 1-paths",
    )


def gb(
    x: SepPoint, initial_walks=()
) -> tuple[GapBoundResult, GapBoundCertificate]:
    """One bounding pass: solve the walk LP, form constants, take the max.

    Requires a vertex with at least one 1-edge.  Raises
    ConstantBelowOneError if any constant drops below 1, which an optimal
    dual assignment cannot produce.
    """
    ones = x.one_edges()
    if not ones:
        raise ValueError("point has no 1-edge")
    value, costs, mu = solve_opt2(x, initial_walks=initial_walks)
    constants: dict[Edge, Fraction] = {}
    for e in ones:
        c = compute_C(x, mu, e)
        if c < 1:
            raise ConstantBelowOneError(f"C{e} = {c} < 1")
        constants[e] = c
    c_star = max(constants.values())
    gap_plus = 1 / value
    bound = c_star * gap_plus
    result = GapBoundResult(
        gap_plus=gap_plus,
        constants=tuple(sorted(constants.items())),
        c_star=c_star,
        bound=bound,
    )
    return result, _certificate(x, value, costs, mu, constants, c_star, bound)


def _split_edge_choice(x: SepPoint, constants: dict[Edge, Fraction]) -> Edge:
    """The 1-edge with the largest constant; ties by canonical edge order."""
    _, labeling = canonical_labeling(x.support())
    def key(e: Edge) -> tuple:
        i, j = e
        canon = (min(labeling[i], labeling[j]), max(labeling[i], labeling[j]))
        return (-constants[e], canon, e)
    return min(constants, key=key)


def gbe(
    x: SepPoint,
    alpha: Fraction,
    max_iter: int,
    warm_start: bool = True,
) -> tuple[Fraction, int, list[GapBoundCertificate]]:
    """Iterated bounding: split 1-edges until the bound reaches alpha.

    Returns (best bound, splits performed, certificates of every pass).
    The best bound only improves, so it is valid for all expansions of the
    input vertex whatever iteration produced it; with max_iter=0 this is
    exactly the single-pass bound.
    """
    alpha = Fraction(alpha)
    result, cert = gb(x)
    best = result.bound
    certs = [cert]
    iterations = 0
    while best > alpha and iterations < max_iter:
        constants = dict(result.constants)
        e = _split_edge_choice(x, constants)
        prev_mu, prev_x = DualAssignment(x.n, cert.mu), x
        x = bb_move(x, e)
        iterations += 1
        seeds = ()
        if warm_start:
            seeds = lift_dual_assignment(prev_mu, prev_x, e, 1).walks()
        result, cert = gb(x, initial_walks=seeds)
        certs.append(cert)
        if result.bound < best:
            best = result.bound
    return best, iterations, certs


def verify_certificate(cert: GapBoundCertificate) -> tuple[bool, str | None]:
    """Re-check a certificate with rational arithmetic only (no LP solve).

    Returns (True, None) or (False, reason for the first failing check).
    """
    x = cert.point
    g = x.support()
    costs = dict(cert.costs)
    if set(costs) != set(x.edges):
        return False, "costs are not keyed by the support edges"
    for e, c in costs.items():
        if c < 0:
            return False, f"negative cost on edge {e}"

    load: dict[Edge, Fraction] = {e: Fraction(0) for e in x.edges}
    total = Fraction(0)
    for w, v in cert.mu:
        ok, why = is_valid_walk(g, w)
        if not ok:
            return False, f"invalid walk in dual support: {why}"
        if v <= 0:
            return False, f"non-positive dual weight {v}"
        for e, m in w.mult:
            load[e] += m * v
        total += v
    for e in x.edges:
        if load[e] > x.weight(e):
            return False, f"dual infeasible on edge {e}: {load[e]} > {x.weight(e)}"
    if total != cert.value:
        return False, f"dual objective {total} != recorded value {cert.value}"

    for w, _ in cert.mu:
        c = w.cost(costs)
        if c != 1:
            return False, f"supported walk costs {c}, not 1"
    primal = sum((costs[e] * x.weight(e) for e in x.edges), Fraction(0))
    if primal != cert.value:
        return False, f"primal cost {primal} != recorded value {cert.value}"

    constants = dict(cert.constants)
    if set(constants) != set(x.one_edges()):
        return False, "constants are not keyed by the 1-edges"
    mu = DualAssignment(x.n, cert.mu)
    for e, stated in constants.items():
        actual = compute_C(x, mu, e)
        if actual != stated:
            return False, f"constant on {e} is {actual}, certificate says {stated}"
        if stated < 1:
            return False, f"constant on {e} below 1"
    if cert.c_star != max(constants.values()):
        return False, "recorded maximal constant is wrong"
    if cert.bound != cert.c_star / cert.value:
        return False, "bound arithmetic is wrong"
    return True, None
