"""The on-disk vertex list format.

Line-oriented text, one block per point:

    # comments run to end of line
    v <n> <m>
    <i> <j> <num>/<den>     (m edge lines, 0-based nodes, i < j)

Weights are rationals in (0, 1]; plain integers are accepted (``1``).
Parsing is exact and strict: any malformed line is rejected with its line
number, as is any weight outside (0, 1].  ``serialize_points`` writes the
canonical rendering (sorted edges, reduced rationals), and parsing it back
reproduces the points bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .graphs import SepPoint
from .rationals import format_rational, parse_rational

__all__ = ["VertexFile", "VertexFileError", "parse_vertex_file", "parse_vertex_text", "serialize_points"]


class VertexFileError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class VertexFile:
    points: tuple[SepPoint, ...]

    def __len__(self) -> int:
        return len(self.points)


def parse_vertex_text(text: str) -> VertexFile:
    points: list[SepPoint] = []
    n = m = None
    weights: dict = {}
    header_line = 0

    def close_block(line_no: int) -> None:
        nonlocal n, m, weights
        if n is None:
            return
        if len(weights) != m:
            raise VertexFileError(
                header_line, f"block announced {m} edges, found {len(weights)}"
            )
        try:
            points.append(SepPoint(n, weights))
        except ValueError as exc:
            raise VertexFileError(header_line, str(exc)) from exc
        n = m = None
        weights = {}

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "v":
            close_block(line_no)
            if len(tokens) != 3:
                raise VertexFileError(line_no, "header must be 'v <n> <m>'")
            try:
                n, m = int(tokens[1]), int(tokens[2])
            except ValueError as exc:
                raise VertexFileError(line_no, f"bad header numbers: {exc}") from exc
            if n < 1 or m < 0:
                raise VertexFileError(line_no, f"bad header values n={n}, m={m}")
            header_line = line_no
        else:
            if n is None:
                raise VertexFileError(line_no, "edge line before any 'v' header")
            if len(tokens) != 3:
                raise VertexFileError(line_no, "edge line must be '<i> <j> <weight>'")
            try:
                i, j = int(tokens[0]), int(tokens[1])
                w = parse_rational(tokens[2])
            except ValueError as exc:
                raise VertexFileError(line_no, str(exc)) from exc
            if not (0 <= i < j < n):
                raise VertexFileError(line_no, f"need 0 <= i < j < n, got {i} {j} (n={n})")
            if (i, j) in weights:
                raise VertexFileError(line_no, f"duplicate edge {(i, j)}")
            if not (0 < w <= 1):
                raise VertexFileError(line_no, f"weight {w} outside (0, 1]")
            if len(weights) >= m:
                raise VertexFileError(line_no, f"more than {m} edge lines in block")
            weights[(i, j)] = w
    close_block(0)
    return VertexFile(tuple(points))


def parse_vertex_file(path: str | Path) -> VertexFile:
    return parse_vertex_text(Path(path).read_text(encoding="utf-8"))


def serialize_points(points) -> str:
    """Canonical text rendering; parsing it back is the identity."""
    blocks = []
    for p in points:
        lines = [f"v {p.n} {p.support_size()}"]
        for (i, j), w in p.items():
            lines.append(f"{i} {j} {format_rational(w)}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + ("\n" if blocks else "")
