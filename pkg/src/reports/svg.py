"""Deterministic SVG pictures of relations and Mahavier prefixes."""

from typing import Iterable, List, Sequence, Tuple

from src.core.errors import RelationError
from src.core.relation import Relation, RelationKind
from src.core.scalar import Scalar
from src.mahavier.entropy import mahavier_members

CANVAS = 400
MARGIN = 20
MAX_PREFIX_DEPTH = 3

_HEADER = (
    '<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
    'viewBox="0 0 {size} {size}">'
)


def _fmt(value: float) -> str:
    return f"{value:.6f}"


class _Frame:
    """Maps the ambient square onto the canvas, y axis pointing up."""

    def __init__(self, lo: Scalar, hi: Scalar):
        self.lo = float(lo)
        self.scale = (CANVAS - 2 * MARGIN) / float(hi - lo)

    def x(self, value) -> str:
        return _fmt(MARGIN + (float(value) - self.lo) * self.scale)

    def y(self, value) -> str:
        return _fmt(CANVAS - MARGIN - (float(value) - self.lo) * self.scale)


def _frame_elements(frame: _Frame, lo: Scalar, hi: Scalar) -> List[str]:
    x0, x1, y0, y1 = frame.x(lo), frame.x(hi), frame.y(lo), frame.y(hi)
    return [
        f'<rect x="{x0}" y="{y1}" width="{_fmt(float(hi - lo) * frame.scale)}" '
        f'height="{_fmt(float(hi - lo) * frame.scale)}" fill="none" stroke="#999999"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}" stroke="#cccccc" stroke-dasharray="4 4"/>',
    ]


def _relation_elements(G: Relation, frame: _Frame) -> List[str]:
    elements = []
    if G.kind == RelationKind.SEGMENTS:
        for segment in G.segments:
            (xa, ya), (xb, yb) = segment.endpoints()
            elements.append(
                f'<line x1="{frame.x(xa)}" y1="{frame.y(ya)}" x2="{frame.x(xb)}" '
                f'y2="{frame.y(yb)}" stroke="#1f4e9c" stroke-width="2"/>'
            )
    elif G.kind == RelationKind.POINTS:
        for x, y in G.points:
            elements.append(f'<circle cx="{frame.x(x)}" cy="{frame.y(y)}" r="3" fill="#1f4e9c"/>')
    else:
        side = _fmt(float(G.ambient.width) / G.grid.n * frame.scale)
        for cell in sorted(G.grid.cells):
            xs, ys = G.cell_box(cell)
            elements.append(
                f'<rect x="{frame.x(xs.lo)}" y="{frame.y(ys.hi)}" width="{side}" '
                f'height="{side}" fill="#1f4e9c" fill-opacity="0.6"/>'
            )
    return elements


def _document(elements: Iterable[str]) -> str:
    return "\n".join([_HEADER.format(size=CANVAS), *elements, "</svg>"]) + "\n"


def relation_svg(G: Relation) -> str:
    """SVG of G inside its ambient square; identical input gives identical bytes."""
    frame = _Frame(G.ambient.lo, G.ambient.hi)
    return _document(_frame_elements(frame, G.ambient.lo, G.ambient.hi) + _relation_elements(G, frame))


def _project(sequence: Sequence[Scalar]) -> Tuple[float, float]:
    # oblique view: the third coordinate shifts the point diagonally
    x1, x2 = float(sequence[0]), float(sequence[1])
    if len(sequence) < 3:
        return x1, x2
    x3 = float(sequence[2])
    return x1 + x3 / 2, x2 + x3 / 2


def prefix_svg(F: Relation, m: int) -> str:
    """
    Scatter of the m-th Mahavier product of a finite relation.

    Depth 1 plots (x_1, x_2); deeper prefixes are drawn as an oblique
    projection of (x_1, x_2, x_3).

    Raises:
        RelationError: For non-finite relations or m outside 1..3
    """
    F.require(RelationKind.POINTS)
    if not 1 <= m <= MAX_PREFIX_DEPTH:
        raise RelationError(f"Prefix plots support 1 <= m <= {MAX_PREFIX_DEPTH}, got {m}")
    lo, hi = F.ambient.lo, F.ambient.hi
    if m >= 2:
        hi = hi + F.ambient.width / 2
    frame = _Frame(lo, hi)
    elements = _frame_elements(frame, lo, hi)
    for sequence in mahavier_members(F, m):
        u, v = _project(sequence)
        elements.append(f'<circle cx="{frame.x(u)}" cy="{frame.y(v)}" r="2" fill="#b03a2e"/>')
    return _document(elements)
