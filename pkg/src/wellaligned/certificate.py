"""Search for well-aligned subsets and the entropy lower bound they certify."""

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, List, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel

from config.settings import settings
from src.core.errors import AlignmentInvariantError, GuardExceededError, RelationError
from src.core.intervals import Interval, IntervalUnion
from src.core.relation import (
    AffineSegment,
    Relation,
    RelationKind,
    inverse,
    project,
    restrict,
    union,
)
from src.core.scalar import Scalar
from src.core.serialization import RelationFile, relation_to_record
from src.wellaligned.alignment import check_well_aligned, delta_split
from src.wellaligned.fibers import r_ell
from src.wellaligned.psi import epsilon_gap, psi_max
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

Target = Literal["G", "G_inverse"]


def concat(*sequences: Iterable) -> tuple:
    """T_1 + T_2 + ... as one flat tuple, order preserved."""
    return tuple(item for sequence in sequences for item in sequence)


@dataclass(frozen=True)
class AlignmentWitness:
    """L and R inside G (or inside G^-1 when target is G_inverse), well-aligned by b."""

    b: Scalar
    L: Relation
    R: Relation
    target: Target = "G"
    level_overlap: bool = False

    def relation(self, G: Relation) -> Relation:
        """The relation the witness lives in."""
        return G if self.target == "G" else inverse(G)


class CertificateRecord(BaseModel):
    b: str
    psi: int
    uniform_k: int
    epsilon: str
    lower_bound: float
    target: Target
    level_overlap: bool
    L: RelationFile
    R: RelationFile


@dataclass(frozen=True)
class Certificate:
    """Proof that ent(G) >= log 2 / (psi + 2) > 0."""

    witness: AlignmentWitness
    psi: int
    uniform_k: int
    epsilon: Scalar

    @property
    def lower_bound(self) -> float:
        return math.log(2) / (self.psi + 2)

    @property
    def b(self) -> Scalar:
        return self.witness.b

    def to_record(self) -> CertificateRecord:
        return CertificateRecord(
            b=str(self.witness.b),
            psi=self.psi,
            uniform_k=self.uniform_k,
            epsilon=str(self.epsilon),
            lower_bound=self.lower_bound,
            target=self.witness.target,
            level_overlap=self.witness.level_overlap,
            L=relation_to_record(self.witness.L),
            R=relation_to_record(self.witness.R),
        )


def build_certificate(L: Relation, R: Relation, b: Scalar, target: Target = "G") -> Optional[Certificate]:
    """
    Certificate for an explicit (L, R, b), or None when the clauses fail.

    Raises:
        AlignmentInvariantError: If the clauses hold but the separation gap is not positive
    """
    b = Scalar.coerce(b)
    check = check_well_aligned(L, R, b)
    if not check.ok:
        return None
    psi, uniform_k = psi_max(L, b)
    epsilon = epsilon_gap(L, R)
    if epsilon <= 0:
        raise AlignmentInvariantError(f"Well-aligned pair with non-positive gap {epsilon}")
    witness = AlignmentWitness(b, L, R, target, check.level_overlap)
    return Certificate(witness, psi, uniform_k, epsilon)


# Segment relations

def _side_piece(segment: AffineSegment, above: bool) -> Optional[AffineSegment]:
    """Part of the segment with y >= x (above) or y <= x."""
    if segment.transposed:
        slope, offset = 1 - segment.slope, -segment.intercept
    else:
        slope, offset = segment.slope - 1, segment.intercept
    if not above:
        slope, offset = -slope, -offset
    lo, hi = segment.xlo, segment.xhi
    if slope == 0:
        return segment if offset >= 0 else None
    root = -offset / slope
    if slope > 0:
        lo = max(lo, root)
    else:
        hi = min(hi, root)
    if hi < lo:
        return None
    return AffineSegment(segment.slope, segment.intercept, lo, hi, segment.transposed)


def _side(G: Relation, above: bool) -> Relation:
    pieces = [piece for s in G.segments if (piece := _side_piece(s, above)) is not None]
    if not above:
        pieces = [p for p in pieces if not (p.is_degenerate() and p.point_at(p.xlo)[0] == p.point_at(p.xlo)[1])]
    return Relation.from_segments(pieces, G.ambient, G.d)


def _segment_levels(G: Relation) -> List[Scalar]:
    values = set()
    for segment in G.segments:
        y_range = segment.y_range()
        values.update((y_range.lo, y_range.hi))
        for piece in (_side_piece(segment, True), _side_piece(segment, False)):
            if piece is not None:
                for x, y in piece.endpoints():
                    if x == y:
                        values.add(y)
    return sorted(values)


def _trim(L: Relation, R: Relation, b: Scalar, rounds: int = 32) -> Tuple[Relation, Relation]:
    """Shrink L and R until the projection clauses can hold (greatest fixpoint)."""
    for _ in range(rounds):
        if L.is_empty() or R.is_empty():
            break
        split = delta_split(L, b)
        range_r = project(R, 2)
        lower = restrict(split.lower, xs=range_r, ys=range_r)
        upper = restrict(split.plus, xs=project(L, 2))
        trimmed_l = union(upper, lower)
        trimmed_r = restrict(R, xs=project(trimmed_l, 2)) if not trimmed_l.is_empty() else R
        if trimmed_l == L and trimmed_r == R:
            break
        L, R = trimmed_l, trimmed_r
    return L, R


def _cuts(L: Relation, b: Scalar, depth: int = 3) -> List[Optional[Scalar]]:
    """No cut, then r_L(b), r_L^2(b), ... as lower x-bounds for L."""
    cuts: List[Optional[Scalar]] = [None]
    value = b
    for _ in range(depth):
        try:
            _, value = r_ell(L, value)
        except RelationError:
            break
        if value in cuts:
            break
        cuts.append(value)
    return cuts


def _certify_segments(H: Relation, levels: Sequence[Scalar], target: Target) -> Optional[Certificate]:
    above, below = _side(H, True), _side(H, False)
    whole = IntervalUnion([H.ambient.as_interval()])
    for b in levels:
        low = IntervalUnion([Interval(H.ambient.lo, b)])
        r_start = restrict(below, ys=low)
        for cut in _cuts(above, b):
            l_start = above if cut is None else restrict(
                above, xs=whole.intersect_interval(Interval(cut, H.ambient.hi))
            )
            L, R = _trim(l_start, r_start, b)
            if L.is_empty() or R.is_empty():
                continue
            certificate = build_certificate(L, R, b, target)
            if certificate is not None:
                return certificate
    return None


# Finite relations

def _finite_levels(F: Relation) -> List[Scalar]:
    heights = sorted({y for _, y in F.points})
    return heights + [(u + v) / 2 for u, v in zip(heights, heights[1:])]


def _certify_finite(F: Relation, levels: Sequence[Scalar], target: Target) -> Optional[Certificate]:
    if len(F.points) > settings.finite_certify_guard:
        raise GuardExceededError(
            f"Exhaustive certificate search is limited to {settings.finite_certify_guard} points, "
            f"got {len(F.points)}"
        )
    for b in levels:
        # each point can only ever serve on one side of the diagonal
        for_l = [(x, y) for x, y in F.points if y > x or (y == x and y < b)]
        for_r = [(x, y) for x, y in F.points if y < x and y <= b]
        for mask_l in itertools.product((False, True), repeat=len(for_l)):
            L_points = [p for p, keep in zip(for_l, mask_l) if keep]
            if not L_points:
                continue
            for mask_r in itertools.product((False, True), repeat=len(for_r)):
                R_points = [p for p, keep in zip(for_r, mask_r) if keep]
                if not R_points:
                    continue
                L = Relation.from_points(L_points, F.ambient, F.d)
                R = Relation.from_points(R_points, F.ambient, F.d)
                certificate = build_certificate(L, R, b, target)
                if certificate is not None:
                    return certificate
    return None


def certify(G: Relation, hints: Optional[Sequence[Scalar]] = None,
            targets: Sequence[Target] = ("G", "G_inverse")) -> Optional[Certificate]:
    """
    Find well-aligned L, R in G or in G^-1 and return the resulting certificate.

    Candidate levels are the hints followed by the relation's breakpoints
    (segment y-range ends and diagonal crossings; for finite relations the
    heights and the midpoints between them). Finite relations are searched
    exhaustively over all (L, R) splits. None means no candidate passed.

    Args:
        G: Segment or finite relation
        hints: Levels b to try first
        targets: Which of G and G^-1 to search, in order

    Returns:
        The first certificate in candidate order, or None

    Raises:
        GuardExceededError: For finite relations above the exhaustive-search guard
    """
    G.require(RelationKind.POINTS, RelationKind.SEGMENTS)
    if G.is_empty():
        return None
    hint_values = [Scalar.coerce(h) for h in (hints or ())]
    for target in targets:
        H = G if target == "G" else inverse(G)
        found = _finite_levels(H) if H.kind == RelationKind.POINTS else _segment_levels(H)
        levels = [
            b for b in dict.fromkeys(hint_values + found)
            if H.ambient.lo < b < H.ambient.hi
        ]
        logger.debug(f"Certificate search on {target}: {len(levels)} candidate levels")
        if H.kind == RelationKind.POINTS:
            certificate = _certify_finite(H, levels, target)
        else:
            certificate = _certify_segments(H, levels, target)
        if certificate is not None:
            logger.info(
                f"Certificate for {G} on {target}: b={certificate.b}, psi={certificate.psi}, "
                f"bound={certificate.lower_bound:.6f}"
            )
            return certificate
    logger.info(f"No well-aligned subsets found for {G}")
    return None
