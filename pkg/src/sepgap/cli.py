"""Command-line interface.

Subcommands: check-vertex, gb, gbe, ancestors, run-family, survey,
verify-cert.  The proof path is deterministic and seed-free; --seed exists
for randomized test drivers only and is ignored by every subcommand here.

Exit codes: 0 when the requested checks/bounds all succeed, 1 when some
bound exceeds the target or a verification fails, 2 for usage and missing
input data ("source data absent").
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .bounding import gb, gbe, verify_certificate
from .certio import CertificateFormatError, dump_certificate, load_certificate
from .fixtures import ancestors_k4, prism_point
from .pipeline import FamilyReport, filter_ancestors, run_family, survey
from .polytope import is_vertex
from .rationals import format_rational, parse_rational
from .vertex_enum import enumerate_sep_vertices
from .vertexfile import parse_vertex_file

__all__ = ["main"]


def _load_points(path: str):
    return list(parse_vertex_file(path).points)


def _cmd_check_vertex(args) -> int:
    points = _load_points(args.file)
    ok = True
    for idx, p in enumerate(points):
        report = is_vertex(p)
        status = "vertex" if report.is_vertex else (
            f"feasible, rank {report.tight_rank}" if report.feasible
            else f"infeasible: {report.violation}"
        )
        print(f"[{idx}] n={p.n} |E|={p.support_size()}: {status}")
        ok = ok and report.is_vertex
    return 0 if ok else 1


def _write_certs(out: str | None, tag: str, certs) -> None:
    if out is None:
        return
    directory = Path(out)
    directory.mkdir(parents=True, exist_ok=True)
    for step, cert in enumerate(certs):
        dump_certificate(cert, directory / f"cert-{tag}-{step}.json")


def _cmd_gb(args) -> int:
    points = _load_points(args.file)
    worst = Fraction(0)
    for idx, p in enumerate(points):
        result, cert = gb(p)
        print(f"[{idx}] n={p.n} |E|={p.support_size()}: "
              f"value={format_rational(1 / result.gap_plus)} "
              f"C*={format_rational(result.c_star)} "
              f"bound={format_rational(result.bound)}")
        _write_certs(args.out, str(idx), [cert])
        worst = max(worst, result.bound)
    if args.alpha is not None and worst > parse_rational(args.alpha):
        print(f"worst bound {format_rational(worst)} exceeds alpha {args.alpha}")
        return 1
    return 0


def _cmd_gbe(args) -> int:
    points = _load_points(args.file)
    alpha = parse_rational(args.alpha)
    ok = True
    for idx, p in enumerate(points):
        bound, iters, certs = gbe(p, alpha, args.max_iter)
        print(f"[{idx}] n={p.n} |E|={p.support_size()}: "
              f"bound={format_rational(bound)} after {iters} extra iterations")
        _write_certs(args.out, str(idx), certs)
        ok = ok and bound <= alpha
    return 0 if ok else 1


def _cmd_ancestors(args) -> int:
    points = _load_points(args.file)
    kept = filter_ancestors(points, args.k)
    print(f"{len(kept)} ancestor(s) of order {args.k}")
    for idx, p in enumerate(kept):
        print(f"[{idx}] n={p.n} |E|={p.support_size()}")
    if args.out:
        from .vertexfile import serialize_points
        Path(args.out).write_text(serialize_points(kept), encoding="utf-8")
    return 0


def _family_ancestors(args) -> list | None:
    if args.file:
        return _load_points(args.file)
    if args.k == 3:
        return list(enumerate_sep_vertices(6))
    if args.k == 4:
        return list(ancestors_k4())
    return None


def _report_json(report: FamilyReport) -> dict:
    return {
        "k": report.k,
        "alpha": format_rational(report.alpha),
        "ancestors": report.ancestor_count,
        "max_bound": None if report.max_bound is None else format_rational(report.max_bound),
        "max_additional_iterations": report.max_iterations,
        "failures": [r.index for r in report.failures],
        "runs": [
            {
                "index": r.index,
                "n": r.point.n,
                "support_edges": r.point.support_size(),
                "bound": format_rational(r.bound),
                "iterations": r.iterations,
            }
            for r in report.runs
        ],
    }


def _cmd_run_family(args) -> int:
    ancestors = _family_ancestors(args)
    if ancestors is None:
        print(f"source data absent: order k={args.k} needs an external vertex "
              f"list (pass --file); built-in data covers k=3 and k=4 only")
        return 2
    alpha = parse_rational(args.alpha)
    report = run_family(args.k, ancestors, alpha, args.max_iter)
    print(f"k={report.k}: {report.ancestor_count} ancestor(s), "
          f"max bound {None if report.max_bound is None else format_rational(report.max_bound)}, "
          f"max additional iterations {report.max_iterations}")
    for r in report.runs:
        flag = "" if r.bound <= alpha else "  EXCEEDS TARGET"
        print(f"  [{r.index}] n={r.point.n} |E|={r.point.support_size()} "
              f"bound={format_rational(r.bound)} iters={r.iterations}{flag}")
    if report.failures:
        print(f"{len(report.failures)} ancestor(s) above alpha={args.alpha}")
    if args.out:
        directory = Path(args.out)
        directory.mkdir(parents=True, exist_ok=True)
        (directory / "report.json").write_text(
            json.dumps(_report_json(report), indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        for r in report.runs:
            _write_certs(args.out, f"k{report.k}-{r.index}", r.certificates)
    return 0 if report.all_within_target else 1


def _cmd_survey(args) -> int:
    rows = survey(args.n)
    print(f"{'id':<8} {'n':>3} {'|E|':>4} {'gap+':>8}")
    for row in rows:
        print(f"{row.vertex_id:<8} {row.n:>3} {row.support_size:>4} "
              f"{format_rational(row.gap_plus):>8}")
    if args.out:
        payload = [
            {"id": r.vertex_id, "n": r.n, "support_edges": r.support_size,
             "gap_plus": format_rational(r.gap_plus)}
            for r in rows
        ]
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return 0


def _cmd_verify_cert(args) -> int:
    ok = True
    for path in args.files:
        try:
            cert = load_certificate(path)
        except CertificateFormatError as exc:
            print(f"{path}: REJECT ({exc})")
            ok = False
            continue
        accepted, reason = verify_certificate(cert)
        if accepted:
            print(f"{path}: OK bound={format_rational(cert.bound)}")
        else:
            print(f"{path}: REJECT ({reason})")
            ok = False
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sepgap",
        description="Exact certified bounds on the subtour-relaxation integrality gap.",
    )
    parser.add_argument("--seed", type=int, default=None,
                        help="seed for randomized test drivers; proof subcommands ignore it")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-vertex", help="feasibility and vertexhood of points in a file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_check_vertex)

    p = sub.add_parser("gb", help="single-pass bound for each point in a file")
    p.add_argument("file")
    p.add_argument("--alpha", default=None, help="optional target bound (rational)")
    p.add_argument("--out", default=None, help="directory for certificates")
    p.set_defaults(func=_cmd_gb)

    p = sub.add_parser("gbe", help="iterated bound for each point in a file")
    p.add_argument("file")
    p.add_argument("--alpha", default="4/3", help="target bound (rational, default 4/3)")
    p.add_argument("--max-iter", type=int, default=10)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_gbe)

    p = sub.add_parser("ancestors", help="filter order-k ancestors from a vertex file")
    p.add_argument("file")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", default=None, help="write the kept ancestors to this file")
    p.set_defaults(func=_cmd_ancestors)

    p = sub.add_parser("run-family", help="certify a bound for a whole ancestor family")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--file", default=None,
                   help="external vertex list (required for k >= 5)")
    p.add_argument("--alpha", default="4/3")
    p.add_argument("--max-iter", type=int, default=10)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_run_family)

    p = sub.add_parser("survey", help="per-vertex table for small n (enumeration oracle)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_survey)

    p = sub.add_parser("verify-cert", help="re-check certificates without any LP solve")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=_cmd_verify_cert)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
