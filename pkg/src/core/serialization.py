"""JSON file formats for relations and homeomorphisms."""

from pathlib import Path
from typing import Any, List, Literal, Union

from pydantic import BaseModel, Field, ValidationError

from src.core.errors import RelationError
from src.core.homeomorphism import Homeomorphism, HomeoPiece
from src.core.intervals import Interval
from src.core.relation import AffineSegment, AmbientInterval, Relation, RelationKind
from src.core.scalar import Scalar
from src.utils.helpers import hash_content
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


class SegmentRecord(BaseModel):
    slope: str
    intercept: str
    xlo: str
    xhi: str
    transposed: bool = False


class GridRecord(BaseModel):
    n: int = Field(ge=1)
    cells: List[List[int]]


class RelationFile(BaseModel):
    """On-disk relation: scalars are strings in the exact p/q+r/s*sqrt(d) format."""

    ambient: List[str] = Field(min_length=2, max_length=2)
    d: int = Field(ge=0)
    kind: Literal["points", "segments", "grid"]
    data: Union[GridRecord, List[SegmentRecord], List[List[str]]]


class PieceRecord(BaseModel):
    dom: List[str] = Field(min_length=2, max_length=2)
    slope: str
    intercept: str


class HomeomorphismFile(BaseModel):
    source: List[str] = Field(min_length=2, max_length=2)
    target: List[str] = Field(min_length=2, max_length=2)
    pieces: List[PieceRecord]


def _parse(text: str, d: int) -> Scalar:
    return Scalar.parse(text, d)


def relation_to_record(G: Relation) -> RelationFile:
    if G.kind == RelationKind.POINTS:
        data: Any = [[str(x), str(y)] for x, y in G.points]
    elif G.kind == RelationKind.SEGMENTS:
        data = [
            SegmentRecord(slope=str(s.slope), intercept=str(s.intercept),
                          xlo=str(s.xlo), xhi=str(s.xhi), transposed=s.transposed)
            for s in G.segments
        ]
    else:
        data = GridRecord(n=G.grid.n, cells=[[i, j] for i, j in sorted(G.grid.cells)])
    return RelationFile(
        ambient=[str(G.ambient.lo), str(G.ambient.hi)], d=G.d, kind=G.kind.value, data=data
    )


def relation_from_record(record: RelationFile) -> Relation:
    d = record.d
    ambient = AmbientInterval(_parse(record.ambient[0], d), _parse(record.ambient[1], d))
    kind = RelationKind(record.kind)
    if kind == RelationKind.GRID:
        if not isinstance(record.data, GridRecord):
            raise RelationError("Grid relation needs {'n': ..., 'cells': [...]} data")
        return Relation.from_grid(record.data.n, [tuple(c) for c in record.data.cells], ambient, d)
    if kind == RelationKind.SEGMENTS:
        if isinstance(record.data, GridRecord) or any(not isinstance(s, SegmentRecord)
                                                      for s in record.data):
            raise RelationError("Segment relation needs a list of segment records")
        segments = [
            AffineSegment(_parse(s.slope, d), _parse(s.intercept, d), _parse(s.xlo, d),
                          _parse(s.xhi, d), s.transposed)
            for s in record.data
        ]
        return Relation.from_segments(segments, ambient, d)
    if isinstance(record.data, GridRecord) or any(not isinstance(p, list) or len(p) != 2
                                                  for p in record.data):
        raise RelationError("Point relation needs a list of [x, y] pairs")
    return Relation.from_points(((_parse(x, d), _parse(y, d)) for x, y in record.data), ambient, d)


def dumps_relation(G: Relation) -> str:
    return relation_to_record(G).model_dump_json(indent=2)


def loads_relation(text: str) -> Relation:
    """
    Parse a relation file.

    Raises:
        RelationError: If the JSON is malformed or violates relation invariants
    """
    try:
        record = RelationFile.model_validate_json(text)
    except ValidationError as e:
        raise RelationError(f"Malformed relation file: {e}") from e
    return relation_from_record(record)


def load_relation(path: Union[str, Path]) -> Relation:
    relation = loads_relation(Path(path).read_text(encoding="utf-8"))
    logger.debug(f"Loaded {relation} from {path}")
    return relation


def save_relation(G: Relation, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps_relation(G) + "\n", encoding="utf-8")


def homeomorphism_to_record(phi: Homeomorphism) -> HomeomorphismFile:
    return HomeomorphismFile(
        source=[str(phi.source.lo), str(phi.source.hi)],
        target=[str(phi.target.lo), str(phi.target.hi)],
        pieces=[
            PieceRecord(dom=list(piece.dom.to_strings()), slope=str(piece.slope),
                        intercept=str(piece.intercept))
            for piece in phi.pieces
        ],
    )


def dumps_homeomorphism(phi: Homeomorphism) -> str:
    return homeomorphism_to_record(phi).model_dump_json(indent=2)


def loads_homeomorphism(text: str, d: int = 0) -> Homeomorphism:
    try:
        record = HomeomorphismFile.model_validate_json(text)
    except ValidationError as e:
        raise RelationError(f"Malformed homeomorphism file: {e}") from e
    source = AmbientInterval(_parse(record.source[0], d), _parse(record.source[1], d))
    target = AmbientInterval(_parse(record.target[0], d), _parse(record.target[1], d))
    pieces = tuple(
        HomeoPiece(Interval(_parse(p.dom[0], d), _parse(p.dom[1], d)),
                   _parse(p.slope, d), _parse(p.intercept, d))
        for p in record.pieces
    )
    return Homeomorphism(source, target, pieces)


def load_homeomorphism(path: Union[str, Path], d: int = 0) -> Homeomorphism:
    return loads_homeomorphism(Path(path).read_text(encoding="utf-8"), d)


def relation_fingerprint(G: Relation) -> str:
    """SHA-256 of the canonical file form; equal relations share it."""
    return hash_content(dumps_relation(G))
