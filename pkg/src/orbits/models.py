"""Periodic orbits, orbit families and census records."""

from dataclasses import dataclass
from typing import Hashable, List, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from src.core.intervals import Interval
from src.core.relation import Relation, contains
from src.core.scalar import Scalar


def minimal_period(points: Sequence[Scalar]) -> int:
    size = len(points)
    for p in range(1, size + 1):
        if size % p == 0 and all(points[i] == points[(i + p) % size] for i in range(size)):
            return p
    return size


def canonical_rotation(points: Sequence[Scalar]) -> int:
    """Offset of the lexicographically smallest rotation."""
    size = len(points)
    return min(range(size), key=lambda k: tuple(points[k:]) + tuple(points[:k]))


@dataclass(frozen=True)
class PeriodicOrbit:
    """
    Cycle (x_1, ..., x_p) with (x_{i+1}, x_i) in G cyclically.

    branch holds the segment indices (segment relations) or the digraph
    vertices (finite relations) that produced the orbit.
    """

    points: Tuple[Scalar, ...]
    branch: Tuple[Hashable, ...] = ()

    @property
    def period(self) -> int:
        return len(self.points)

    def canonical(self) -> "PeriodicOrbit":
        k = canonical_rotation(self.points)
        branch = self.branch[k:] + self.branch[:k] if len(self.branch) == self.period else self.branch
        return PeriodicOrbit(self.points[k:] + self.points[:k], branch)

    def verify(self, G: Relation) -> bool:
        p = self.period
        return all(contains(G, self.points[(i + 1) % p], self.points[i]) for i in range(p))

    def to_record(self) -> "OrbitRecord":
        return OrbitRecord(period=self.period, points=[str(x) for x in self.points],
                           branch=[str(b) for b in self.branch])


@dataclass(frozen=True)
class OrbitFamily:
    """Interval of starting points x_1 all generating orbits along one branch word."""

    word: Tuple[int, ...]
    domain: Interval

    @property
    def period(self) -> int:
        return len(self.word)


class OrbitRecord(BaseModel):
    period: int
    points: List[str]
    branch: List[str] = Field(default_factory=list)


class FamilyRecord(BaseModel):
    period: int
    word: List[int]
    domain: List[str]


class OrbitCensus(BaseModel):
    """JSON census of periodic orbits up to max_period."""

    max_period: int
    orbits: List[OrbitRecord] = Field(default_factory=list)
    families: List[FamilyRecord] = Field(default_factory=list)
    proof_level: Literal["proven", "bounded_search"] = "bounded_search"
    note: Optional[str] = None

    @classmethod
    def build(cls, max_period: int, orbits: Sequence[PeriodicOrbit],
              families: Sequence[OrbitFamily] = (), proven: bool = False,
              note: Optional[str] = None) -> "OrbitCensus":
        return cls(
            max_period=max_period,
            orbits=[orbit.to_record() for orbit in orbits],
            families=[
                FamilyRecord(period=f.period, word=list(f.word), domain=list(f.domain.to_strings()))
                for f in families
            ],
            proof_level="proven" if proven else "bounded_search",
            note=note,
        )
