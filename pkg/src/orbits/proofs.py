"""Algebraic proof that lines through the origin generate no other periodic point."""

from enum import Enum
from typing import List

from pydantic import BaseModel, Field

from src.core.relation import Relation, RelationKind
from src.core.scalar import Scalar
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


class ProofStatus(str, Enum):
    PROVEN = "proven"
    NOT_APPLICABLE = "not_applicable"


class ProofResult(BaseModel):
    status: ProofStatus
    reason: str
    slopes: List[str] = Field(default_factory=list)

    @property
    def proven(self) -> bool:
        return self.status == ProofStatus.PROVEN


def _not_applicable(reason: str, slopes=()) -> ProofResult:
    logger.debug(f"No periodicity proof: {reason}")
    return ProofResult(status=ProofStatus.NOT_APPLICABLE, reason=reason,
                       slopes=[str(s) for s in slopes])


def _no_unit_product(slopes: List[Scalar]) -> str:
    """Reason why no product s_1^k1 * ... * s_j^kj with some k_i > 0 equals 1, or ""."""
    magnitudes = [abs(s) for s in slopes]
    if all(m > 1 for m in magnitudes):
        return "every slope has magnitude above 1"
    if all(m < 1 for m in magnitudes):
        return "every slope has magnitude below 1"
    if len(slopes) == 2:
        for first, second in (slopes, slopes[::-1]):
            if first.powers_irrational() and second.is_rational() and abs(second) != 1:
                return (
                    f"every power of {first} is irrational (p*r != 0) "
                    f"while {second} is rational with magnitude != 1"
                )
    return ""


def prove_no_nonzero_periodic(G: Relation) -> ProofResult:
    """
    Prove that 0 is the only point a periodic orbit of G can pass through.

    Every branch is y = s*x, so along a word with k_i uses of slope s_i a
    periodic point satisfies x_1 = x_1 / (s_1^k1 * ... ). Unless that
    product is 1, x_1 = 0. The product is certified never to be 1 when all
    magnitudes lie on one side of 1, or when one slope has only irrational
    powers and the other is a rational of magnitude != 1.

    Args:
        G: Segment relation whose segments all lie on lines through the origin

    Returns:
        proven, or not_applicable with the reason
    """
    if G.kind != RelationKind.SEGMENTS:
        return _not_applicable("only segment relations are covered")
    if G.is_empty():
        return _not_applicable("empty relation")
    slopes: List[Scalar] = []
    for segment in G.segments:
        if segment.transposed or segment.is_degenerate():
            return _not_applicable(f"piece {segment} is not a non-vertical line segment")
        if segment.intercept != 0:
            return _not_applicable(f"line y = {segment.slope}*x + {segment.intercept} misses the origin")
        if segment.slope == 0:
            return _not_applicable("horizontal branch")
        if segment.slope not in slopes:
            slopes.append(segment.slope)

    reason = _no_unit_product(slopes)
    if not reason:
        return _not_applicable("slope products might equal 1", slopes)
    logger.debug(f"No nonzero periodic point for {G}: {reason}")
    return ProofResult(status=ProofStatus.PROVEN, reason=reason, slopes=[str(s) for s in slopes])
