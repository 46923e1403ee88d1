"""Bundled reference points: the prism and the five order-4 ancestors.

The order-4 graphs are transcriptions of drawn figures, so every load
re-validates them with the exact vertex check and fails hard on any
mismatch; a silently wrong fixture would poison every downstream result.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from ..graphs import SepPoint
from ..polytope import is_vertex
from ..vertexfile import parse_vertex_text

__all__ = ["FixtureError", "prism_point", "ancestors_k4", "fixture_ancestors"]


class FixtureError(RuntimeError):
    """A bundled fixture failed validation; the installation is unusable."""


def _load(name: str, expect: int) -> tuple[SepPoint, ...]:
    text = resources.files("sepgap.fixtures").joinpath(name).read_text(encoding="utf-8")
    points = parse_vertex_text(text).points
    if len(points) != expect:
        raise FixtureError(f"{name}: expected {expect} points, parsed {len(points)}")
    for idx, p in enumerate(points):
        report = is_vertex(p)
        if not report.is_vertex:
            raise FixtureError(f"{name}[{idx}]: not a polytope vertex ({report.violation})")
    return points


@lru_cache(maxsize=None)
def prism_point() -> SepPoint:
    """The unique order-3 ancestor: half-weight triangles plus a 1-matching."""
    return _load("prism.txt", 1)[0]


@lru_cache(maxsize=None)
def ancestors_k4() -> tuple[SepPoint, ...]:
    """The five order-4 ancestors, validated at load."""
    return _load("ancestors_k4.txt", 5)


def fixture_ancestors() -> dict[int, tuple[SepPoint, ...]]:
    """All bundled ancestors keyed by their order k (= |E| - n)."""
    return {3: (prism_point(),), 4: ancestors_k4()}
