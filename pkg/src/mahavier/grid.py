"""Grid covers of the ambient interval and outer rasterization of relations."""

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional, Set, Tuple

from config.settings import settings
from src.core.errors import RepresentationError
from src.core.intervals import Interval
from src.core.relation import AffineSegment, AmbientInterval, Cell, Relation, RelationKind
from src.core.scalar import Scalar
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


class CellSemantics(str, Enum):
    """
    CLOSED: a point on a cell boundary belongs to both neighbouring cells.
    HALF_OPEN: cells [lo+iw, lo+(i+1)w) partition the interval, last cell closed.
    INTERIOR: only open cells count, so boundary points belong to no cell;
        for a Markov map this is the partition transition matrix.
    """

    CLOSED = "closed"
    HALF_OPEN = "half_open"
    INTERIOR = "interior"


def default_semantics() -> CellSemantics:
    return CellSemantics(settings.cell_semantics)


@dataclass(frozen=True)
class GridCover:
    """The n equal cells of the ambient interval."""

    ambient: AmbientInterval
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise RepresentationError(f"Grid resolution must be positive, got {self.n}")

    @property
    def width(self) -> Scalar:
        return self.ambient.width / self.n

    def cell(self, k: int) -> Interval:
        return Interval(self.ambient.grid_boundary(self.n, k),
                        self.ambient.grid_boundary(self.n, k + 1))

    def _scaled(self, value: Scalar) -> Scalar:
        return (value - self.ambient.lo) * self.n / self.ambient.width

    def _clip(self, k: int) -> int:
        return min(max(k, 0), self.n - 1)

    def _inside(self, scaled: Scalar) -> bool:
        """Whether a scaled coordinate lies in the interior of some cell."""
        return scaled != scaled.floor() and 0 <= scaled.floor() < self.n

    def index_range(self, lo: Scalar, hi: Scalar, semantics: CellSemantics,
                    open_hi: bool = False) -> range:
        """
        Cells meeting the interval from lo to hi.

        With HALF_OPEN semantics open_hi excludes hi itself, which matters
        only when hi sits exactly on a cell boundary.
        """
        low, high = self._scaled(lo), self._scaled(hi)
        if semantics == CellSemantics.INTERIOR:
            if low == high:
                return range(low.floor(), low.floor() + 1) if self._inside(low) else range(0)
            return range(self._clip(low.floor()), self._clip(high.ceil() - 1) + 1)
        if semantics == CellSemantics.CLOSED:
            first = low.ceil() - 1
            last = high.floor()
        else:
            first = low.floor()
            last = high.ceil() - 1 if open_hi else high.floor()
        return range(self._clip(first), self._clip(last) + 1)

    def cells_of(self, value: Scalar, semantics: CellSemantics) -> Tuple[int, ...]:
        if semantics == CellSemantics.CLOSED:
            return self.ambient.cells_touching(value, self.n)
        if semantics == CellSemantics.INTERIOR:
            return tuple(self.index_range(value, value, semantics))
        return (self._clip(self._scaled(value).floor()),)


def _segment_cells(segment: AffineSegment, cover: GridCover,
                   semantics: CellSemantics) -> Iterator[Cell]:
    """Cells met by a segment, walking along its parameter axis."""
    closed = semantics == CellSemantics.CLOSED
    interior = semantics == CellSemantics.INTERIOR
    strips = cover.index_range(segment.xlo, segment.xhi, CellSemantics.CLOSED if interior else semantics)
    for k in strips:
        strip = cover.cell(k)
        lo = max(segment.xlo, strip.lo)
        hi = min(segment.xhi, strip.hi)
        if hi < lo:
            continue
        if interior and lo == hi and not strip.lo < lo < strip.hi:
            continue
        if interior:
            a, b = segment.value_at(lo), segment.value_at(hi)
            for v in cover.index_range(min(a, b), max(a, b), semantics):
                yield (v, k) if segment.transposed else (k, v)
            continue
        # in a half-open strip the right edge belongs to the next strip
        open_right = not closed and k < cover.n - 1 and hi == strip.hi
        if open_right and lo == hi:
            continue
        a, b = segment.value_at(lo), segment.value_at(hi)
        if segment.slope.sign() > 0:
            values = cover.index_range(a, b, semantics, open_hi=open_right)
        elif segment.slope.sign() < 0:
            values = cover.index_range(b, a, semantics)
        else:
            values = cover.index_range(a, a, semantics)
        for v in values:
            yield (v, k) if segment.transposed else (k, v)


def _box_cells(box: Tuple[Interval, Interval], cover: GridCover,
               semantics: CellSemantics) -> Iterator[Cell]:
    xs, ys = box
    for i in cover.index_range(xs.lo, xs.hi, semantics):
        for j in cover.index_range(ys.lo, ys.hi, semantics):
            yield (i, j)


def rasterize(G: Relation, n: int, semantics: Optional[CellSemantics] = None) -> Relation:
    """
    Outer grid approximation of G at resolution n.

    A cell is occupied exactly when its closed box meets G (CLOSED), or
    when some point of G is assigned to it by the partition (HALF_OPEN),
    or when its open box meets G (INTERIOR).

    Args:
        G: Relation in any representation
        n: Grid resolution
        semantics: Cell semantics, defaults to settings.cell_semantics

    Returns:
        GridBitmap relation containing G
    """
    semantics = semantics or default_semantics()
    cover = GridCover(G.ambient, n)
    if G.kind == RelationKind.GRID and G.grid.n == n:
        return G
    cells: Set[Cell] = set()
    if G.kind == RelationKind.POINTS:
        for x, y in G.points:
            cells.update((i, j) for i in cover.cells_of(x, semantics)
                         for j in cover.cells_of(y, semantics))
    elif G.kind == RelationKind.SEGMENTS:
        for segment in G.segments:
            cells.update(_segment_cells(segment, cover, semantics))
    else:
        for cell in G.grid.cells:
            cells.update(_box_cells(G.cell_box(cell), cover, CellSemantics.CLOSED))
    logger.debug(f"Rasterized {G} at n={n}: {len(cells)} cells")
    return Relation.from_grid(n, cells, G.ambient, G.d)
