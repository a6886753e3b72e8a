"""Exception hierarchy shared by every analysis module.

Every error subclasses ValueError so callers can treat malformed input
uniformly; the subclasses let tests and the CLI tell failures apart.
"""


class RelationError(ValueError):
    """Base class for invalid relations, scalars and parameters."""


class FieldMismatchError(RelationError):
    """Two scalars live in different quadratic fields."""


class AmbientError(RelationError):
    """A point or relation lies outside its ambient square."""


class RepresentationError(RelationError):
    """An operation does not support the relation's representation."""


class GuardExceededError(RelationError):
    """An enumeration would exceed its configured size guard."""


class BranchNotInvertibleError(RelationError):
    """A branch word contains a horizontal (non-invertible) segment."""


class AlignmentInvariantError(RelationError):
    """A well-alignment invariant that should hold was broken."""


class ConjugacyError(RelationError):
    """A homeomorphism is invalid or a transferred object failed verification."""


class ParameterError(RelationError):
    """Gallery parameters violate the inequalities their construction needs."""
