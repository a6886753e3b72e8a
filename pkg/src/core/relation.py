"""Closed relations on a compact interval and their set-level predicates."""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from config.settings import settings
from src.core.errors import AmbientError, FieldMismatchError, RepresentationError
from src.core.intervals import Interval, IntervalUnion
from src.core.scalar import Scalar
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

Point = Tuple[Scalar, Scalar]
Cell = Tuple[int, int]


@dataclass(frozen=True)
class AmbientInterval:
    """The compact interval X; relations live in X x X."""

    lo: Scalar = Scalar(0)
    hi: Scalar = Scalar(1)

    def __post_init__(self):
        if not self.lo < self.hi:
            raise AmbientError(f"Ambient interval needs lo < hi, got [{self.lo}, {self.hi}]")

    @classmethod
    def unit(cls) -> "AmbientInterval":
        return cls(Scalar(0), Scalar(1))

    @property
    def width(self) -> Scalar:
        return self.hi - self.lo

    def contains(self, value: Scalar) -> bool:
        return self.lo <= value <= self.hi

    def as_interval(self) -> Interval:
        return Interval(self.lo, self.hi)

    def grid_boundary(self, n: int, k: int) -> Scalar:
        """Left end of cell k of the n-cell grid (k == n gives hi)."""
        return self.lo + self.width * Scalar(k) / n

    def cells_touching(self, value: Scalar, n: int) -> Tuple[int, ...]:
        """Indices of the closed cells containing value (two on a boundary)."""
        scaled = (value - self.lo) * n / self.width
        k = scaled.floor()
        if scaled == k:
            return tuple(i for i in (k - 1, k) if 0 <= i < n)
        return (k,) if 0 <= k < n else ()


class RelationKind(str, Enum):
    POINTS = "points"
    SEGMENTS = "segments"
    GRID = "grid"


def _preimage(values: IntervalUnion, slope: Scalar, intercept: Scalar,
              domain: Interval) -> IntervalUnion:
    """Parameters t in domain with slope*t + intercept in values."""
    if slope == 0:
        return IntervalUnion([domain]) if values.contains(intercept) else IntervalUnion()
    pieces = []
    for part in values:
        u = (part.lo - intercept) / slope
        v = (part.hi - intercept) / slope
        pieces.append(Interval(min(u, v), max(u, v)))
    return IntervalUnion(pieces).intersect_interval(domain)


@dataclass(frozen=True)
class AffineSegment:
    """
    Segment of a line, parametrised by t in [xlo, xhi].

    Ordinary segments are {(t, slope*t + intercept)}. Transposed segments
    are {(slope*t + intercept, t)}; canonical form only uses them for
    vertical pieces (slope 0), which is what inverting a horizontal
    segment produces.
    """

    slope: Scalar
    intercept: Scalar
    xlo: Scalar
    xhi: Scalar
    transposed: bool = False

    def __post_init__(self):
        if self.xhi < self.xlo:
            raise RepresentationError(f"Segment needs xlo <= xhi, got [{self.xlo}, {self.xhi}]")

    @classmethod
    def through(cls, start: Point, end: Point) -> "AffineSegment":
        """Segment joining two points (vertical pairs become transposed)."""
        (x0, y0), (x1, y1) = sorted([start, end])
        if x0 == x1:
            lo, hi = min(y0, y1), max(y0, y1)
            return cls(Scalar(0), x0, lo, hi, transposed=True)
        slope = (y1 - y0) / (x1 - x0)
        return cls(slope, y0 - slope * x0, x0, x1)

    @property
    def param_range(self) -> Interval:
        return Interval(self.xlo, self.xhi)

    def value_at(self, t: Scalar) -> Scalar:
        return self.slope * t + self.intercept

    def point_at(self, t: Scalar) -> Point:
        value = self.value_at(t)
        return (value, t) if self.transposed else (t, value)

    def endpoints(self) -> Tuple[Point, Point]:
        return self.point_at(self.xlo), self.point_at(self.xhi)

    def _value_range(self) -> Interval:
        a, b = self.value_at(self.xlo), self.value_at(self.xhi)
        return Interval(min(a, b), max(a, b))

    def x_range(self) -> Interval:
        return self._value_range() if self.transposed else self.param_range

    def y_range(self) -> Interval:
        return self.param_range if self.transposed else self._value_range()

    def is_degenerate(self) -> bool:
        return self.xlo == self.xhi

    def line_key(self) -> Tuple[bool, Scalar, Scalar]:
        return (self.transposed, self.slope, self.intercept)

    def sort_key(self):
        return (self.transposed, self.slope, self.intercept, self.xlo, self.xhi)

    def canonical(self) -> "AffineSegment":
        if self.is_degenerate():
            x, y = self.point_at(self.xlo)
            return AffineSegment(Scalar(0), y, x, x)
        if self.transposed and self.slope != 0:
            x_lo, x_hi = self.value_at(self.xlo), self.value_at(self.xhi)
            slope = Scalar(1) / self.slope
            return AffineSegment(slope, -self.intercept * slope, min(x_lo, x_hi), max(x_lo, x_hi))
        return self

    def inverse(self) -> "AffineSegment":
        if self.transposed:
            return AffineSegment(self.slope, self.intercept, self.xlo, self.xhi)
        if self.slope == 0:
            return AffineSegment(self.slope, self.intercept, self.xlo, self.xhi, transposed=True)
        a, b = self.value_at(self.xlo), self.value_at(self.xhi)
        slope = Scalar(1) / self.slope
        return AffineSegment(slope, -self.intercept * slope, min(a, b), max(a, b))

    def contains(self, x: Scalar, y: Scalar) -> bool:
        t, value = (y, x) if self.transposed else (x, y)
        return self.xlo <= t <= self.xhi and value == self.value_at(t)

    def fiber(self, y: Scalar) -> Optional[Interval]:
        """x-values of the segment's points at height y."""
        if self.transposed:
            return Interval.point(self.value_at(y)) if self.param_range.contains(y) else None
        if self.slope == 0:
            return self.param_range if y == self.intercept else None
        t = (y - self.intercept) / self.slope
        return Interval.point(t) if self.param_range.contains(t) else None

    def restrict(self, xs: Optional[IntervalUnion], ys: Optional[IntervalUnion]) -> List["AffineSegment"]:
        """Pieces of the segment whose points have x in xs and y in ys."""
        allowed = IntervalUnion([self.param_range])
        own, other = (ys, xs) if self.transposed else (xs, ys)
        if own is not None:
            allowed = allowed.intersect(own)
        if other is not None:
            allowed = allowed.intersect(_preimage(other, self.slope, self.intercept, self.param_range))
        return [
            AffineSegment(self.slope, self.intercept, part.lo, part.hi, self.transposed)
            for part in allowed
        ]


@dataclass(frozen=True)
class GridBitmap:
    """Occupied closed cells (i, j) of the n x n grid; i indexes x, j indexes y."""

    n: int
    cells: FrozenSet[Cell] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 1:
            raise RepresentationError(f"Grid resolution must be positive, got {self.n}")
        for i, j in self.cells:
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise RepresentationError(f"Cell ({i}, {j}) outside a {self.n}-grid")


def _canonical_segments(segments: Iterable[AffineSegment]) -> Tuple[AffineSegment, ...]:
    by_line = {}
    points = []
    for segment in segments:
        segment = segment.canonical()
        if segment.is_degenerate():
            points.append(segment)
        else:
            by_line.setdefault(segment.line_key(), []).append(segment.param_range)
    merged = []
    for (transposed, slope, intercept), ranges in by_line.items():
        for part in IntervalUnion(ranges):
            merged.append(AffineSegment(slope, intercept, part.lo, part.hi, transposed))
    for point in set(points):
        x, y = point.point_at(point.xlo)
        if not any(segment.contains(x, y) for segment in merged):
            merged.append(point)
    return tuple(sorted(merged, key=AffineSegment.sort_key))


@dataclass(frozen=True)
class Relation:
    """
    Closed relation G in X x X in one of three representations.

    Instances are canonical: points are sorted and unique, segments are
    merged per line and sorted, so equality of relations is equality of
    fields.
    """

    ambient: AmbientInterval
    kind: RelationKind
    points: Tuple[Point, ...] = ()
    segments: Tuple[AffineSegment, ...] = ()
    grid: Optional[GridBitmap] = None
    d: int = 2

    # Constructors

    @classmethod
    def from_points(cls, points: Iterable[Sequence], ambient: Optional[AmbientInterval] = None,
                    d: Optional[int] = None) -> "Relation":
        ambient = ambient or AmbientInterval.unit()
        pairs = sorted({(Scalar.coerce(x), Scalar.coerce(y)) for x, y in points})
        relation = cls(ambient, RelationKind.POINTS, points=tuple(pairs), d=_field(d))
        relation._validate()
        return relation

    @classmethod
    def from_segments(cls, segments: Iterable[AffineSegment],
                      ambient: Optional[AmbientInterval] = None,
                      d: Optional[int] = None) -> "Relation":
        ambient = ambient or AmbientInterval.unit()
        relation = cls(ambient, RelationKind.SEGMENTS, segments=_canonical_segments(segments),
                       d=_field(d))
        relation._validate()
        return relation

    @classmethod
    def from_grid(cls, n: int, cells: Iterable[Cell], ambient: Optional[AmbientInterval] = None,
                  d: Optional[int] = None) -> "Relation":
        ambient = ambient or AmbientInterval.unit()
        bitmap = GridBitmap(n, frozenset((int(i), int(j)) for i, j in cells))
        return cls(ambient, RelationKind.GRID, grid=bitmap, d=_field(d))

    @classmethod
    def empty(cls, kind: RelationKind = RelationKind.POINTS,
              ambient: Optional[AmbientInterval] = None, n: int = 1,
              d: Optional[int] = None) -> "Relation":
        ambient = ambient or AmbientInterval.unit()
        grid = GridBitmap(n) if kind == RelationKind.GRID else None
        return cls(ambient, kind, grid=grid, d=_field(d))

    def _validate(self) -> None:
        values = [self.ambient.lo, self.ambient.hi]
        for x, y in self.points:
            values.extend((x, y))
            if not (self.ambient.contains(x) and self.ambient.contains(y)):
                raise AmbientError(f"Point ({x}, {y}) lies outside the ambient square")
        for segment in self.segments:
            values.extend((segment.slope, segment.intercept, segment.xlo, segment.xhi))
            xs, ys = segment.x_range(), segment.y_range()
            if not (self.ambient.contains(xs.lo) and self.ambient.contains(xs.hi)
                    and self.ambient.contains(ys.lo) and self.ambient.contains(ys.hi)):
                raise AmbientError(f"Segment {segment} leaves the ambient square")
        for value in values:
            if value.d and value.d != self.d:
                raise FieldMismatchError(
                    f"field mismatch: sqrt({value.d}) in a relation over sqrt({self.d})"
                )

    # Views

    def is_empty(self) -> bool:
        if self.kind == RelationKind.GRID:
            return not self.grid.cells
        return not self.points and not self.segments

    def coordinates(self) -> Tuple[Scalar, ...]:
        """Distinct coordinate values of a finite relation, sorted."""
        self.require(RelationKind.POINTS)
        return tuple(sorted({v for pair in self.points for v in pair}))

    def require(self, *kinds: RelationKind) -> None:
        if self.kind not in kinds:
            names = " or ".join(k.value for k in kinds)
            raise RepresentationError(f"Operation needs a {names} relation, got {self.kind.value}")

    def cell_box(self, cell: Cell) -> Tuple[Interval, Interval]:
        i, j = cell
        n = self.grid.n
        return (
            Interval(self.ambient.grid_boundary(n, i), self.ambient.grid_boundary(n, i + 1)),
            Interval(self.ambient.grid_boundary(n, j), self.ambient.grid_boundary(n, j + 1)),
        )

    def __repr__(self) -> str:
        if self.kind == RelationKind.GRID:
            size = f"n={self.grid.n}, cells={len(self.grid.cells)}"
        elif self.kind == RelationKind.SEGMENTS:
            size = f"segments={len(self.segments)}"
        else:
            size = f"points={len(self.points)}"
        return f"<Relation({self.kind.value}, [{self.ambient.lo}, {self.ambient.hi}], {size})>"


def _field(d: Optional[int]) -> int:
    return settings.default_discriminant if d is None else d


def inverse(G: Relation) -> Relation:
    """{(y, x) : (x, y) in G}, in the same representation."""
    if G.kind == RelationKind.POINTS:
        return Relation.from_points(((y, x) for x, y in G.points), G.ambient, G.d)
    if G.kind == RelationKind.SEGMENTS:
        return Relation.from_segments((s.inverse() for s in G.segments), G.ambient, G.d)
    return Relation.from_grid(G.grid.n, ((j, i) for i, j in G.grid.cells), G.ambient, G.d)


def project(G: Relation, axis: int) -> IntervalUnion:
    """
    Projection p_1 (axis 1) or p_2 (axis 2) in merged canonical form.

    Finite relations give a union of degenerate intervals.
    """
    if axis not in (1, 2):
        raise ValueError(f"axis must be 1 or 2, got {axis}")
    if G.kind == RelationKind.POINTS:
        return IntervalUnion.of_points(pair[axis - 1] for pair in G.points)
    if G.kind == RelationKind.SEGMENTS:
        return IntervalUnion(s.x_range() if axis == 1 else s.y_range() for s in G.segments)
    n = G.grid.n
    indices = {cell[axis - 1] for cell in G.grid.cells}
    return IntervalUnion(
        Interval(G.ambient.grid_boundary(n, k), G.ambient.grid_boundary(n, k + 1))
        for k in indices
    )


def contains(G: Relation, x: Scalar, y: Scalar) -> bool:
    """Exact membership of (x, y) in G."""
    x, y = Scalar.coerce(x), Scalar.coerce(y)
    if not (G.ambient.contains(x) and G.ambient.contains(y)):
        raise AmbientError(f"Point ({x}, {y}) lies outside the ambient square")
    if G.kind == RelationKind.POINTS:
        return (x, y) in set(G.points)
    if G.kind == RelationKind.SEGMENTS:
        return any(s.contains(x, y) for s in G.segments)
    n = G.grid.n
    columns = G.ambient.cells_touching(x, n)
    rows = G.ambient.cells_touching(y, n)
    return any((i, j) in G.grid.cells for i in columns for j in rows)


class UscClass(str, Enum):
    NOT_GRAPH = "not_graph"
    GRAPH = "graph"
    SURJECTIVE_GRAPH = "surjective_graph"


def is_usc_graph(G: Relation) -> UscClass:
    """
    Classify G as the graph of an upper semicontinuous function.

    A closed relation is such a graph exactly when every x has a nonempty
    fiber, i.e. p_1(G) is the whole ambient interval.
    """
    if G.is_empty():
        raise RepresentationError("Empty relation is not a graph of anything")
    whole = IntervalUnion([G.ambient.as_interval()])
    if project(G, 1) != whole:
        return UscClass.NOT_GRAPH
    if project(G, 2) != whole:
        return UscClass.GRAPH
    return UscClass.SURJECTIVE_GRAPH


def _segment_in_grid(segment: AffineSegment, G: Relation) -> bool:
    n = G.grid.n
    params = {segment.xlo, segment.xhi}
    for k in range(n + 1):
        boundary = G.ambient.grid_boundary(n, k)
        # parameters where either coordinate crosses a grid line
        crossing = IntervalUnion([Interval.point(boundary)])
        for found in _preimage(crossing, segment.slope, segment.intercept, segment.param_range):
            params.update((found.lo, found.hi))
        if segment.param_range.contains(boundary):
            params.add(boundary)
    ordered = sorted(params)
    if not all(contains(G, *segment.point_at(t)) for t in ordered):
        return False
    return all(
        contains(G, *segment.point_at((lo + hi) / 2)) for lo, hi in zip(ordered, ordered[1:])
    )


def _grid_in_grid(H: Relation, G: Relation) -> bool:
    n = H.grid.n * G.grid.n // math.gcd(H.grid.n, G.grid.n)
    kh, kg = n // H.grid.n, n // G.grid.n
    refined = {
        (i * kg + u, j * kg + v) for i, j in G.grid.cells for u in range(kg) for v in range(kg)
    }
    return all(
        (i * kh + u, j * kh + v) in refined
        for i, j in H.grid.cells for u in range(kh) for v in range(kh)
    )


def subset(H: Relation, G: Relation) -> bool:
    """Exact test of H contained in G."""
    if H.ambient != G.ambient:
        raise AmbientError("subset needs relations on the same ambient interval")
    if H.is_empty():
        return True
    if H.kind == RelationKind.POINTS:
        return all(contains(G, x, y) for x, y in H.points)
    if H.kind == RelationKind.SEGMENTS:
        if G.kind == RelationKind.POINTS:
            # a nondegenerate segment has infinitely many points
            return all(s.is_degenerate() and contains(G, *s.point_at(s.xlo)) for s in H.segments)
        if G.kind == RelationKind.GRID:
            return all(_segment_in_grid(s, G) for s in H.segments)
        lines = {}
        for segment in G.segments:
            lines.setdefault(segment.line_key(), []).append(segment.param_range)
        for segment in H.segments:
            if segment.is_degenerate():
                if not contains(G, *segment.point_at(segment.xlo)):
                    return False
                continue
            covered = IntervalUnion(lines.get(segment.line_key(), []))
            if not covered.covers(segment.param_range):
                return False
        return True
    if G.kind != RelationKind.GRID:
        return False
    return _grid_in_grid(H, G)


def union(G: Relation, H: Relation) -> Relation:
    """Canonical union of two relations of the same kind."""
    if G.ambient != H.ambient:
        raise AmbientError("union needs relations on the same ambient interval")
    if G.is_empty() and G.kind != H.kind:
        return H
    if H.is_empty() and G.kind != H.kind:
        return G
    if G.kind != H.kind:
        raise RepresentationError(
            f"Cannot unite {G.kind.value} with {H.kind.value}: convert first"
        )
    if G.kind == RelationKind.POINTS:
        return Relation.from_points(G.points + H.points, G.ambient, G.d)
    if G.kind == RelationKind.SEGMENTS:
        return Relation.from_segments(G.segments + H.segments, G.ambient, G.d)
    if G.grid.n != H.grid.n:
        raise RepresentationError("Cannot unite bitmaps of different resolution: convert first")
    return Relation.from_grid(G.grid.n, G.grid.cells | H.grid.cells, G.ambient, G.d)


def restrict(G: Relation, xs: Optional[IntervalUnion] = None,
             ys: Optional[IntervalUnion] = None) -> Relation:
    """Points of G whose x lies in xs and y lies in ys (None means no constraint)."""
    if G.kind == RelationKind.POINTS:
        kept = [
            (x, y) for x, y in G.points
            if (xs is None or xs.contains(x)) and (ys is None or ys.contains(y))
        ]
        return Relation.from_points(kept, G.ambient, G.d)
    G.require(RelationKind.SEGMENTS)
    pieces = [piece for s in G.segments for piece in s.restrict(xs, ys)]
    return Relation.from_segments(pieces, G.ambient, G.d)
