"""Exact scalars, relations, projections and homeomorphisms."""

from src.core.errors import (
    AlignmentInvariantError,
    AmbientError,
    BranchNotInvertibleError,
    ConjugacyError,
    FieldMismatchError,
    GuardExceededError,
    ParameterError,
    RelationError,
    RepresentationError,
)
from src.core.homeomorphism import Homeomorphism, HomeoPiece
from src.core.intervals import Interval, IntervalUnion
from src.core.relation import (
    AffineSegment,
    AmbientInterval,
    GridBitmap,
    Relation,
    RelationKind,
    UscClass,
    contains,
    inverse,
    is_usc_graph,
    project,
    restrict,
    subset,
    union,
)
from src.core.scalar import Scalar, scalar_cmp

__all__ = [
    "Scalar",
    "scalar_cmp",
    "Interval",
    "IntervalUnion",
    "AmbientInterval",
    "AffineSegment",
    "GridBitmap",
    "Relation",
    "RelationKind",
    "UscClass",
    "Homeomorphism",
    "HomeoPiece",
    "inverse",
    "project",
    "contains",
    "is_usc_graph",
    "subset",
    "union",
    "restrict",
    "RelationError",
    "FieldMismatchError",
    "AmbientError",
    "RepresentationError",
    "GuardExceededError",
    "BranchNotInvertibleError",
    "AlignmentInvariantError",
    "ConjugacyError",
    "ParameterError",
]
