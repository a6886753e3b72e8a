"""Fiber extremes r_G(t) = max{s : (s, t) in G} and l_G(t) = min{...} as exact functions."""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from src.core.errors import RelationError
from src.core.intervals import Interval, IntervalUnion
from src.core.relation import AffineSegment, Relation, RelationKind, project
from src.core.scalar import Scalar


def r_ell(G: Relation, t: Scalar) -> Tuple[Scalar, Scalar]:
    """
    Exact (l_G(t), r_G(t)).

    Raises:
        RelationError: If t is not in p_2(G)
    """
    G.require(RelationKind.POINTS, RelationKind.SEGMENTS)
    t = Scalar.coerce(t)
    xs: List[Scalar] = []
    if G.kind == RelationKind.POINTS:
        xs = [x for x, y in G.points if y == t]
    else:
        for segment in G.segments:
            fiber = segment.fiber(t)
            if fiber is not None:
                xs.extend((fiber.lo, fiber.hi))
    if not xs:
        raise RelationError(f"t={t} outside range projection")
    return min(xs), max(xs)


@dataclass(frozen=True)
class LinearPiece:
    """x = alpha*t + beta for t strictly inside gap."""

    gap: Interval
    alpha: Scalar
    beta: Scalar

    def __call__(self, t: Scalar) -> Scalar:
        return self.alpha * t + self.beta

    def preimage(self, x: Scalar) -> Optional[Scalar]:
        """The t inside the open gap with piece(t) == x, if any."""
        if self.alpha == 0:
            return None
        t = (x - self.beta) / self.alpha
        return t if self.gap.lo < t < self.gap.hi else None


def _fiber_line(segment: AffineSegment) -> Optional[Tuple[Scalar, Scalar]]:
    """x as a linear function of y along the segment; None for horizontal pieces."""
    if segment.is_degenerate():
        return None
    if segment.transposed:
        return segment.slope, segment.intercept
    if segment.slope == 0:
        return None
    inverse_slope = Scalar(1) / segment.slope
    return inverse_slope, -segment.intercept * inverse_slope


class FiberEnvelope:
    """
    r_G (upper=True) or l_G (upper=False) of a segment relation as a
    piecewise linear function of t on p_2(G).

    Breakpoints are segment y-range ends, heights of horizontal pieces and
    crossings of fiber lines; on each open gap between breakpoints one
    linear piece is active. Values at breakpoints come from r_ell.
    """

    def __init__(self, G: Relation, upper: bool = True):
        G.require(RelationKind.SEGMENTS)
        self.G = G
        self.upper = upper
        self.domain: IntervalUnion = project(G, 2)
        lines = []
        points = set()
        for segment in G.segments:
            y_range = segment.y_range()
            points.update((y_range.lo, y_range.hi))
            line = _fiber_line(segment)
            if line is not None:
                lines.append((y_range, line))
        for i, (range_i, (a_i, b_i)) in enumerate(lines):
            for range_j, (a_j, b_j) in lines[i + 1:]:
                if a_i != a_j:
                    t = (b_j - b_i) / (a_i - a_j)
                    if range_i.contains(t) and range_j.contains(t):
                        points.add(t)
        self.breakpoints: Tuple[Scalar, ...] = tuple(sorted(points))
        self.pieces: Tuple[LinearPiece, ...] = tuple(self._pieces(lines))

    def _pieces(self, lines) -> List[LinearPiece]:
        pieces = []
        for lo, hi in zip(self.breakpoints, self.breakpoints[1:]):
            middle = (lo + hi) / 2
            active = [line for y_range, line in lines if y_range.lo <= lo and hi <= y_range.hi]
            if not active:
                continue
            pick = max if self.upper else min
            alpha, beta = pick(active, key=lambda line: line[0] * middle + line[1])
            pieces.append(LinearPiece(Interval(lo, hi), alpha, beta))
        return pieces

    def __call__(self, t: Scalar) -> Scalar:
        ell, r = r_ell(self.G, t)
        return r if self.upper else ell

    def one_sided_limits(self) -> List[Tuple[Scalar, Scalar]]:
        """(t, limit) pairs at both ends of every piece."""
        limits = []
        for piece in self.pieces:
            limits.append((piece.gap.lo, piece(piece.gap.lo)))
            limits.append((piece.gap.hi, piece(piece.gap.hi)))
        return limits

    def preimages(self, x: Scalar) -> List[Scalar]:
        """Every t with envelope(t) == x, at breakpoints or inside pieces."""
        found = [t for t in self.breakpoints if self.domain.contains(t) and self(t) == x]
        for piece in self.pieces:
            t = piece.preimage(x)
            if t is not None:
                found.append(t)
        return found


class FiberFunction:
    """r_G or l_G for either finite or segment relations, evaluated exactly."""

    def __init__(self, G: Relation, upper: bool = True):
        G.require(RelationKind.POINTS, RelationKind.SEGMENTS)
        self.G = G
        self.upper = upper
        self.envelope: Optional[FiberEnvelope] = (
            FiberEnvelope(G, upper) if G.kind == RelationKind.SEGMENTS else None
        )

    def __call__(self, t: Scalar) -> Scalar:
        ell, r = r_ell(self.G, t)
        return r if self.upper else ell

    def critical_points(self) -> Sequence[Scalar]:
        if self.envelope is None:
            return tuple(sorted({y for _, y in self.G.points}))
        return self.envelope.breakpoints

    def preimages(self, x: Scalar) -> List[Scalar]:
        if self.envelope is None:
            return sorted({y for _, y in self.G.points if self(y) == x})
        return self.envelope.preimages(x)
