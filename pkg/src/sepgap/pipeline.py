"""Batch layer: ancestor filtering, family-wide proof runs, and the
small-n survey table.

A family run applies the iterated bounding algorithm to every ancestor of
one order k and aggregates the worst certified bound and the worst number
of extra iterations.  Runs are deterministic: ancestors are processed in
canonical order and certificate output is byte-stable, so two runs of the
same input produce identical artifacts.  Bounds exceeding the target are
reported loudly in the result, never clamped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .bounding import GapBoundCertificate, gbe
from .canonical import canonical_form
from .graphs import SepPoint
from .opt import solve_opt2
from .polytope import is_vertex
from .vertex_enum import enumerate_sep_vertices

__all__ = ["FamilyReport", "AncestorRun", "SurveyRow", "filter_ancestors", "run_family", "survey"]


@dataclass(frozen=True)
class AncestorRun:
    index: int
    point: SepPoint
    bound: Fraction
    iterations: int
    certificates: tuple[GapBoundCertificate, ...]


@dataclass(frozen=True)
class FamilyReport:
    k: int
    alpha: Fraction
    ancestor_count: int
    max_bound: Fraction | None
    max_iterations: int
    runs: tuple[AncestorRun, ...] = field(default=())

    @property
    def failures(self) -> tuple[AncestorRun, ...]:
        return tuple(r for r in self.runs if r.bound > self.alpha)

    @property
    def all_within_target(self) -> bool:
        return not self.failures


def filter_ancestors(points: Iterable[SepPoint], k: int) -> list[SepPoint]:
    """Keep the order-k ancestors, one representative per isomorphism class.

    An ancestor is fractional, has exactly n + k support edges, no node of
    support degree 2, and k + 3 <= n <= 2k.  The result is sorted by
    canonical form, so it does not depend on input order or labeling.
    """
    classes: dict = {}
    for p in points:
        if not p.is_fractional():
            continue
        if p.support_size() != p.n + k:
            continue
        if not (k + 3 <= p.n <= 2 * k):
            continue
        g = p.support()
        if any(g.degree(v) == 2 for v in range(p.n)):
            continue
        cf = canonical_form(g)
        if cf not in classes:
            classes[cf] = p
    return [classes[cf] for cf in sorted(classes, key=lambda c: c.sort_key())]


def run_family(
    k: int,
    ancestors: Sequence[SepPoint],
    alpha: Fraction,
    max_iter: int,
) -> FamilyReport:
    """Certify a bound for every ancestor of order k.

    The ancestors must already be vertices (re-checked here for n <= 12).
    The report carries every run; a bound above alpha is a loud failure in
    ``report.failures``, not an error.
    """
    alpha = Fraction(alpha)
    ordered = filter_ancestors(ancestors, k)
    runs = []
    for idx, x in enumerate(ordered):
        if x.n <= 12:
            report = is_vertex(x)
            if not report.is_vertex:
                raise ValueError(f"ancestor {idx} is not a vertex: {report.violation}")
        bound, iters, certs = gbe(x, alpha, max_iter)
        runs.append(AncestorRun(idx, x, bound, iters, tuple(certs)))
    return FamilyReport(
        k=k,
        alpha=alpha,
        ancestor_count=len(ordered),
        max_bound=max((r.bound for r in runs), default=None),
        max_iterations=max((r.iterations for r in runs), default=0),
        runs=tuple(runs),
    )


@dataclass(frozen=True)
class SurveyRow:
    vertex_id: str
    n: int
    support_size: int
    gap_plus: Fraction


def survey(n: int) -> list[SurveyRow]:
    """One row per non-isomorphic vertex of the n-node polytope (n <= 6).

    Rows are sorted by (support size, canonical form); the ratio column is
    the reciprocal of the walk-LP value.
    """
    reps = enumerate_sep_vertices(n)
    keyed = sorted(reps, key=lambda p: (p.support_size(), canonical_form(p.support()).sort_key()))
    rows = []
    for idx, p in enumerate(keyed):
        value, _, _ = solve_opt2(p)
        rows.append(SurveyRow(
            vertex_id=f"v{n}.{idx}",
            n=n,
            support_size=p.support_size(),
            gap_plus=1 / value,
        ))
    return rows
