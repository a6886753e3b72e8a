"""Piecewise-affine homeomorphisms between ambient intervals."""

from dataclasses import dataclass
from typing import Iterable, List, Tuple

from src.core.errors import ConjugacyError
from src.core.intervals import Interval
from src.core.relation import AmbientInterval
from src.core.scalar import Scalar


@dataclass(frozen=True)
class HomeoPiece:
    """t -> slope*t + intercept on dom."""

    dom: Interval
    slope: Scalar
    intercept: Scalar

    def __call__(self, t: Scalar) -> Scalar:
        return self.slope * t + self.intercept


@dataclass(frozen=True)
class Homeomorphism:
    """Strictly monotone, continuous, piecewise-affine bijection source -> target."""

    source: AmbientInterval
    target: AmbientInterval
    pieces: Tuple[HomeoPiece, ...]

    def __post_init__(self):
        pieces = tuple(sorted(self.pieces, key=lambda piece: piece.dom.lo))
        object.__setattr__(self, "pieces", pieces)
        if not pieces:
            raise ConjugacyError("Homeomorphism needs at least one piece")
        if pieces[0].dom.lo != self.source.lo or pieces[-1].dom.hi != self.source.hi:
            raise ConjugacyError("Homeomorphism pieces must cover the source interval")
        signs = {piece.slope.sign() for piece in pieces}
        if 0 in signs or len(signs) != 1:
            raise ConjugacyError("Homeomorphism must be strictly monotone")
        for left, right in zip(pieces, pieces[1:]):
            if left.dom.hi != right.dom.lo:
                raise ConjugacyError(f"Gap between pieces at {left.dom.hi}")
            if left(left.dom.hi) != right(right.dom.lo):
                raise ConjugacyError(f"Pieces disagree at {left.dom.hi}")
        start, end = pieces[0](self.source.lo), pieces[-1](self.source.hi)
        if {start, end} != {self.target.lo, self.target.hi}:
            raise ConjugacyError(f"Image [{start}, {end}] differs from the target interval")

    @classmethod
    def affine(cls, source: AmbientInterval, target: AmbientInterval,
               decreasing: bool = False) -> "Homeomorphism":
        """The unique affine map of source onto target with the given orientation."""
        slope = target.width / source.width
        if decreasing:
            slope = -slope
            intercept = target.lo - slope * source.hi
        else:
            intercept = target.lo - slope * source.lo
        return cls(source, target, (HomeoPiece(source.as_interval(), slope, intercept),))

    @classmethod
    def identity(cls, ambient: AmbientInterval) -> "Homeomorphism":
        return cls.affine(ambient, ambient)

    @classmethod
    def from_pieces(cls, source: AmbientInterval, target: AmbientInterval,
                    pieces: Iterable[Tuple[Interval, Scalar, Scalar]]) -> "Homeomorphism":
        return cls(source, target, tuple(HomeoPiece(dom, s, c) for dom, s, c in pieces))

    def is_affine(self) -> bool:
        return len(self.pieces) == 1

    def is_increasing(self) -> bool:
        return self.pieces[0].slope.sign() > 0

    def breakpoints(self) -> List[Scalar]:
        return [piece.dom.lo for piece in self.pieces[1:]]

    def piece_at(self, t: Scalar) -> HomeoPiece:
        for piece in self.pieces:
            if piece.dom.contains(t):
                return piece
        raise ConjugacyError(f"{t} lies outside the source interval")

    def __call__(self, t: Scalar) -> Scalar:
        t = Scalar.coerce(t)
        return self.piece_at(t)(t)

    def inverse(self) -> "Homeomorphism":
        pieces = []
        for piece in self.pieces:
            a, b = piece(piece.dom.lo), piece(piece.dom.hi)
            slope = Scalar(1) / piece.slope
            pieces.append(HomeoPiece(Interval(min(a, b), max(a, b)), slope, -piece.intercept * slope))
        return Homeomorphism(self.target, self.source, tuple(pieces))

    def compose(self, inner: "Homeomorphism") -> "Homeomorphism":
        """self after inner, i.e. t -> self(inner(t))."""
        if inner.target != self.source:
            raise ConjugacyError("Cannot compose: inner target differs from outer source")
        cuts = {inner.source.lo, inner.source.hi, *inner.breakpoints()}
        back = inner.inverse()
        cuts.update(back(point) for point in self.breakpoints())
        ordered = sorted(cuts)
        pieces = []
        for lo, hi in zip(ordered, ordered[1:]):
            first = inner.piece_at((lo + hi) / 2)
            second = self.piece_at(first((lo + hi) / 2))
            pieces.append(HomeoPiece(
                Interval(lo, hi),
                second.slope * first.slope,
                second.slope * first.intercept + second.intercept,
            ))
        return Homeomorphism(inner.source, self.target, tuple(pieces))
