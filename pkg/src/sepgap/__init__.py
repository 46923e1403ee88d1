"""Certified exact-rational bounding of the subtour-relaxation integrality gap.

Everything is computed over ``fractions.Fraction``; no floating point
appears anywhere on the proof path.
"""

from .bounding import (
    GapBoundCertificate,
    GapBoundResult,
    compute_C,
    gb,
    gbe,
    verify_certificate,
)
from .canonical import CanonicalForm, canonical_form, canonical_labeling
from .certio import dump_certificate, load_certificate
from .graphs import Edge, OnePath, SepPoint, WeightedGraph, one_paths, support_graph
from .lp import (
    Constraint,
    LinearProgram,
    LpInfeasibleError,
    LpSolution,
    LpUnboundedError,
    simplex_solve,
)
from .mincut import global_min_cut
from .opt import (
    DualAssignment,
    lift_dual_assignment,
    solve_opt2,
    solve_opt_plus_full,
    verify_dual_feasible,
)
from .pipeline import FamilyReport, filter_ancestors, run_family, survey
from .polytope import (
    AncestorDecomposition,
    VertexCheckReport,
    bb_move,
    check_sep_feasible,
    contract_to_ancestor,
    expand_one_edge,
    is_vertex,
    metric_completion,
)
from .rationals import Rational, format_rational, parse_rational
from .tsp import tsp_brute_force, tsp_exact
from .vertex_enum import enumerate_sep_vertices
from .vertexfile import parse_vertex_file, serialize_points
from .walk_opt import min_cost_walk
from .walks import Walk, enumerate_walks, extend_walk, is_valid_walk

__version__ = "0.1.0"
