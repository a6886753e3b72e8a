"""Closed intervals and finite unions of them, with exact endpoints."""

from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Tuple

from src.core.errors import RelationError
from src.core.scalar import Scalar


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi]; lo == hi encodes a single point."""

    lo: Scalar
    hi: Scalar

    def __post_init__(self):
        if self.hi < self.lo:
            raise RelationError(f"Empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, value: Scalar) -> "Interval":
        return cls(value, value)

    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, value: Scalar) -> bool:
        return self.lo <= value <= self.hi

    def intersect(self, other: "Interval") -> Optional["Interval"]:
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if hi < lo:
            return None
        return Interval(lo, hi)

    def to_strings(self) -> Tuple[str, str]:
        return (str(self.lo), str(self.hi))


class IntervalUnion:
    """
    Canonical finite union of closed intervals.

    Components are sorted and merged whenever they overlap or touch, so two
    unions describing the same set compare equal.
    """

    __slots__ = ("_parts",)

    def __init__(self, parts: Iterable[Interval] = ()):
        ordered = sorted(parts, key=lambda part: (part.lo, part.hi))
        merged: List[Interval] = []
        for part in ordered:
            if merged and part.lo <= merged[-1].hi:
                if part.hi > merged[-1].hi:
                    merged[-1] = Interval(merged[-1].lo, part.hi)
            else:
                merged.append(part)
        self._parts: Tuple[Interval, ...] = tuple(merged)

    @classmethod
    def of_points(cls, values: Iterable[Scalar]) -> "IntervalUnion":
        return cls(Interval.point(v) for v in values)

    @property
    def parts(self) -> Tuple[Interval, ...]:
        return self._parts

    def __iter__(self) -> Iterator[Interval]:
        return iter(self._parts)

    def __len__(self) -> int:
        return len(self._parts)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntervalUnion) and self._parts == other._parts

    def __hash__(self) -> int:
        return hash(self._parts)

    def __repr__(self) -> str:
        body = ", ".join(f"[{p.lo}, {p.hi}]" for p in self._parts)
        return f"IntervalUnion({body})"

    def is_empty(self) -> bool:
        return not self._parts

    def points(self) -> Tuple[Scalar, ...]:
        """Values of the degenerate components."""
        return tuple(part.lo for part in self._parts if part.is_point())

    def contains(self, value: Scalar) -> bool:
        return any(part.contains(value) for part in self._parts)

    def covers(self, interval: Interval) -> bool:
        # merged components are disjoint, so a connected set needs a single one
        return any(part.lo <= interval.lo and interval.hi <= part.hi for part in self._parts)

    def union(self, other: "IntervalUnion") -> "IntervalUnion":
        return IntervalUnion(self._parts + other._parts)

    def intersect(self, other: "IntervalUnion") -> "IntervalUnion":
        pieces = []
        for mine in self._parts:
            for theirs in other._parts:
                common = mine.intersect(theirs)
                if common is not None:
                    pieces.append(common)
        return IntervalUnion(pieces)

    def intersect_interval(self, interval: Interval) -> "IntervalUnion":
        return self.intersect(IntervalUnion([interval]))
