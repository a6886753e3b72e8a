"""Splitting relations at a level b and the four well-alignment clauses."""

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

from src.core.intervals import Interval, IntervalUnion
from src.core.relation import (
    AffineSegment,
    Point,
    Relation,
    RelationKind,
    project,
    union,
)
from src.core.scalar import Scalar
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass(frozen=True)
class DeltaSplit:
    """
    A split at level b: plus (y > b), minus (y < b) and level (y == b).

    plus and minus are stored as closures; the extra points they gain lie
    at height b and belong to level, so every clause evaluates the same on
    closures as on the open parts.
    """

    b: Scalar
    plus: Relation
    minus: Relation
    level: Relation

    @property
    def lower(self) -> Relation:
        """minus together with level."""
        return union(self.minus, self.level)

    @property
    def upper(self) -> Relation:
        return union(self.plus, self.level)


def _split_segment(segment: AffineSegment, b: Scalar):
    """(plus pieces, minus pieces, level pieces) of one segment."""
    y_range = segment.y_range()
    if segment.is_degenerate() or (not segment.transposed and segment.slope == 0):
        height = y_range.lo
        target = 0 if height > b else 1 if height < b else 2
        parts = ([], [], [])
        parts[target].append(segment)
        return parts
    level = segment.restrict(None, IntervalUnion([Interval.point(b)]))
    plus, minus = [], []
    if y_range.hi > b:
        plus = [p for p in segment.restrict(None, IntervalUnion([Interval(b, y_range.hi)]))
                if not p.is_degenerate()]
    if y_range.lo < b:
        minus = [p for p in segment.restrict(None, IntervalUnion([Interval(y_range.lo, b)]))
                 if not p.is_degenerate()]
    return plus, minus, level


def delta_split(A: Relation, b: Scalar) -> DeltaSplit:
    """
    Exact partition of A by y against b.

    Segments crossing y = b are cut there; the crossing point goes to
    level and both sides keep it as a closure point.
    """
    A.require(RelationKind.POINTS, RelationKind.SEGMENTS)
    b = Scalar.coerce(b)
    if A.kind == RelationKind.POINTS:
        build = lambda pts: Relation.from_points(pts, A.ambient, A.d)  # noqa: E731
        return DeltaSplit(
            b,
            build([p for p in A.points if p[1] > b]),
            build([p for p in A.points if p[1] < b]),
            build([p for p in A.points if p[1] == b]),
        )
    plus, minus, level = [], [], []
    for segment in A.segments:
        p, m, eq = _split_segment(segment, b)
        plus.extend(p)
        minus.extend(m)
        level.extend(eq)
    build = lambda segs: Relation.from_segments(segs, A.ambient, A.d)  # noqa: E731
    return DeltaSplit(b, build(plus), build(minus), build(level))


class Region(str, Enum):
    ABOVE = "above"              # y > x
    ABOVE_OR_ON = "above_or_on"  # y >= x
    BELOW = "below"              # y < x


def _extreme_points(G: Relation) -> List[Point]:
    if G.kind == RelationKind.POINTS:
        return list(G.points)
    return [point for segment in G.segments for point in segment.endpoints()]


def region_violation(G: Relation, region: Region) -> Optional[Point]:
    """
    A point of G outside region, or None.

    y - x is affine along a segment, so checking both endpoints is exact.
    """
    for x, y in _extreme_points(G):
        gap = y - x
        if region == Region.ABOVE and not gap > 0:
            return (x, y)
        if region == Region.ABOVE_OR_ON and gap < 0:
            return (x, y)
        if region == Region.BELOW and not gap < 0:
            return (x, y)
    return None


def uncovered_value(A: IntervalUnion, B: IntervalUnion) -> Optional[Scalar]:
    """An exact value in A but not in B, or None when A is a subset of B."""
    for part in A:
        cuts = [part.lo, part.hi]
        for other in B:
            for end in (other.lo, other.hi):
                if part.lo < end < part.hi:
                    cuts.append(end)
        cuts = sorted(set(cuts))
        candidates = list(cuts) + [(u + v) / 2 for u, v in zip(cuts, cuts[1:])]
        for value in candidates:
            if not B.contains(value):
                return value
    return None


@dataclass
class AlignmentCheck:
    """Outcome of checking the four clauses; violations are (clause, witness, detail)."""

    b: Scalar
    violations: List[Tuple[int, Tuple[Scalar, ...], str]] = field(default_factory=list)
    level_overlap: bool = False

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def clause(self) -> Optional[int]:
        """Lowest violated clause."""
        return min(v[0] for v in self.violations) if self.violations else None

    @property
    def violated(self) -> List[int]:
        return sorted({v[0] for v in self.violations})

    def witness(self) -> Optional[Tuple[Scalar, ...]]:
        if not self.violations:
            return None
        return min(self.violations, key=lambda v: v[0])[1]


def check_well_aligned(L: Relation, R: Relation, b: Scalar) -> AlignmentCheck:
    """
    Exact check of the four clauses for (L, R) at level b.

    1. L above b is nonempty, L at or below b is nonempty, R lies at or below b.
    2. L above or at b lies strictly above the diagonal, L below b on or
       above it, and R strictly below it.
    3. Both projections of L at or below b lie in p_2(R).
    4. p_1 of L above b together with p_1(R) lies in p_2(L).

    Every violated clause is recorded with an exact witness.
    """
    b = Scalar.coerce(b)
    result = AlignmentCheck(b)
    if L.ambient != R.ambient:
        result.violations.append((0, (), "L and R live on different ambient intervals"))
        return result
    if not (L.ambient.lo < b < L.ambient.hi):
        result.violations.append((0, (b,), "b must lie inside the ambient interval"))
        return result

    split_l = delta_split(L, b)
    split_r = delta_split(R, b)
    lower_l = split_l.lower
    result.level_overlap = not split_l.level.is_empty()

    if split_l.plus.is_empty():
        result.violations.append((1, (b,), "L has no point above b"))
    if lower_l.is_empty():
        result.violations.append((1, (b,), "L has no point at or below b"))
    if not split_r.plus.is_empty():
        result.violations.append((1, _extreme_points(split_r.plus)[0], "R has a point above b"))

    for part, region, label in (
        (split_l.upper, Region.ABOVE, "L at or above b touches or crosses the diagonal"),
        (split_l.minus, Region.ABOVE_OR_ON, "L below b crosses the diagonal"),
        (R, Region.BELOW, "R touches or crosses the diagonal"),
    ):
        point = region_violation(part, region)
        if point is not None:
            result.violations.append((2, point, label))

    if not lower_l.is_empty() and not R.is_empty():
        range_r = project(R, 2)
        for axis in (2, 1):
            value = uncovered_value(project(lower_l, axis), range_r)
            if value is not None:
                result.violations.append(
                    (3, (value,), f"p_{axis} of L at or below b leaves p_2(R)")
                )

    if not L.is_empty():
        range_l = project(L, 2)
        for part, label in ((split_l.plus, "p_1 of L above b"), (R, "p_1(R)")):
            if part.is_empty():
                continue
            value = uncovered_value(project(part, 1), range_l)
            if value is not None:
                result.violations.append((4, (value,), f"{label} leaves p_2(L)"))

    if result.ok:
        logger.debug(f"Well-aligned at b={b}" + (" (L meets the level b)" if result.level_overlap else ""))
    else:
        logger.debug(f"Not well-aligned at b={b}: clauses {result.violated}")
    return result
