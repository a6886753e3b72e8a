"""Inverse branch maps of segment relations and their compositions."""

from dataclasses import dataclass
from typing import Optional, Sequence

from src.core.errors import BranchNotInvertibleError, RelationError
from src.core.intervals import Interval
from src.core.relation import AffineSegment, Relation, RelationKind
from src.core.scalar import Scalar


@dataclass(frozen=True)
class AffineBranch:
    """x_{k+1} = factor * x_k + offset, valid for x_k in domain."""

    factor: Scalar
    offset: Scalar
    domain: Interval

    @classmethod
    def of_segment(cls, segment: AffineSegment) -> "AffineBranch":
        """
        Step along one segment: the pair (x_{k+1}, x_k) lies on it.

        Raises:
            BranchNotInvertibleError: For horizontal segments, where x_k is
                pinned and x_{k+1} is free
        """
        if segment.is_degenerate():
            x, y = segment.point_at(segment.xlo)
            return cls(Scalar(0), x, Interval.point(y))
        if segment.transposed:
            return cls(segment.slope, segment.intercept, segment.param_range)
        if segment.slope == 0:
            raise BranchNotInvertibleError(
                f"branch not invertible: horizontal segment at y={segment.intercept}"
            )
        factor = Scalar(1) / segment.slope
        return cls(factor, -segment.intercept * factor, segment.y_range())

    def __call__(self, x: Scalar) -> Scalar:
        return self.factor * x + self.offset


@dataclass(frozen=True)
class ComposedBranch:
    """x_{p+1} = c * x_1 + e along a word; domain is None when no x_1 survives."""

    c: Scalar
    e: Scalar
    domain: Optional[Interval]

    @classmethod
    def start(cls, domain: Interval) -> "ComposedBranch":
        return cls(Scalar(1), Scalar(0), domain)

    def then(self, branch: AffineBranch) -> "ComposedBranch":
        """Append one step, shrinking the domain to x_1 values keeping x_k in range."""
        if self.domain is None:
            return self
        if self.c == 0:
            allowed = self.domain if branch.domain.contains(self.e) else None
        else:
            u = (branch.domain.lo - self.e) / self.c
            v = (branch.domain.hi - self.e) / self.c
            allowed = self.domain.intersect(Interval(min(u, v), max(u, v)))
        return ComposedBranch(branch.factor * self.c, branch.factor * self.e + branch.offset, allowed)

    def fixed_points(self) -> Optional[Interval]:
        """Solutions of c*x + e = x inside the domain (an interval when c == 1 and e == 0)."""
        if self.domain is None:
            return None
        if self.c == 1:
            return self.domain if self.e == 0 else None
        x = self.e / (1 - self.c)
        return Interval.point(x) if self.domain.contains(x) else None


def branch_compose(G: Relation, word: Sequence[int]) -> ComposedBranch:
    """
    Exact composition of the inverse branch maps along a word.

    Args:
        G: Segment relation
        word: Segment indices g_1, ..., g_p

    Returns:
        c, e and the exact domain of x_1 on which every step stays on its segment

    Raises:
        BranchNotInvertibleError: If the word uses a horizontal segment
    """
    G.require(RelationKind.SEGMENTS)
    if not word:
        raise RelationError("Branch word must be nonempty")
    composed = ComposedBranch.start(G.ambient.as_interval())
    for index in word:
        if not 0 <= index < len(G.segments):
            raise RelationError(f"Branch index {index} out of range")
        composed = composed.then(AffineBranch.of_segment(G.segments[index]))
    return composed
