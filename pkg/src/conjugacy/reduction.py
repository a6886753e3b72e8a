"""Conjugating lines with a common fixed point onto lines through the origin."""

from dataclasses import dataclass, field
from typing import List, Optional

from src.core.homeomorphism import Homeomorphism
from src.core.relation import AmbientInterval, Relation, RelationKind, contains
from src.core.scalar import Scalar
from src.conjugacy.transfer import apply_homeo
from src.orbits.census import periodic_core
from src.orbits.models import PeriodicOrbit
from src.orbits.proofs import ProofStatus, prove_no_nonzero_periodic
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


def common_fixed_point(G: Relation) -> Optional[Scalar]:
    """The x0 with every segment's line passing through (x0, x0), if there is one."""
    if G.kind != RelationKind.SEGMENTS or G.is_empty():
        return None
    found = None
    for segment in G.segments:
        if segment.transposed or segment.is_degenerate() or segment.slope == 1:
            return None
        x0 = segment.intercept / (1 - segment.slope)
        if found is not None and x0 != found:
            return None
        found = x0
    return found


@dataclass(frozen=True)
class Reduction:
    """phi sends x0 to 0 and G (widened to contain x0) onto image."""

    x0: Scalar
    phi: Homeomorphism
    image: Relation


def reduce_to_origin(G: Relation) -> Optional[Reduction]:
    """
    Affine conjugacy moving the common fixed point of G's lines to 0.

    x0 left of the ambient interval: [x0, hi] onto [0, 1] increasingly;
    right of it: [lo, x0] onto [0, 1] decreasingly; inside: translation by
    -x0. Returns None when the lines share no fixed point.
    """
    x0 = common_fixed_point(G)
    if x0 is None:
        return None
    lo, hi = G.ambient.lo, G.ambient.hi
    if x0 <= lo:
        source = AmbientInterval(x0, hi)
        phi = Homeomorphism.affine(source, AmbientInterval.unit())
    elif x0 >= hi:
        source = AmbientInterval(lo, x0)
        phi = Homeomorphism.affine(source, AmbientInterval.unit(), decreasing=True)
    else:
        source = G.ambient
        phi = Homeomorphism.affine(source, AmbientInterval(lo - x0, hi - x0))
    widened = Relation.from_segments(G.segments, source, G.d)
    image = apply_homeo(widened, phi)
    logger.debug(f"Reduced {G} to lines through the origin via x0={x0}")
    return Reduction(x0, phi, image)


@dataclass
class PeriodicityProof:
    """Complete orbit list when proven; otherwise only the reason it does not apply."""

    status: ProofStatus
    reason: str
    orbits: List[PeriodicOrbit] = field(default_factory=list)
    x0: Optional[Scalar] = None

    @property
    def proven(self) -> bool:
        return self.status == ProofStatus.PROVEN


def prove_no_periodic(G: Relation) -> PeriodicityProof:
    """
    Prove the full list of periodic orbits of G, for every period.

    Chain: trim G to its periodic core, conjugate the core's lines onto
    lines through the origin, apply the algebraic slope argument, then
    check whether the single exceptional point x0 is itself a fixed point
    of the core.
    """
    if G.kind != RelationKind.SEGMENTS:
        return PeriodicityProof(ProofStatus.NOT_APPLICABLE, "only segment relations are covered")
    core = periodic_core(G)
    if core.is_empty():
        return PeriodicityProof(ProofStatus.PROVEN, "periodic core is empty")
    reduction = reduce_to_origin(core)
    if reduction is None:
        return PeriodicityProof(ProofStatus.NOT_APPLICABLE, "core lines share no fixed point")
    slope_proof = prove_no_nonzero_periodic(reduction.image)
    if not slope_proof.proven:
        return PeriodicityProof(ProofStatus.NOT_APPLICABLE, slope_proof.reason, x0=reduction.x0)

    x0 = reduction.x0
    orbits = []
    if core.ambient.contains(x0) and contains(core, x0, x0):
        orbits.append(PeriodicOrbit((x0,)))
        reason = f"{slope_proof.reason}; only the fixed point {x0} remains"
    else:
        reason = f"{slope_proof.reason}; the exceptional point {x0} generates no orbit"
    return PeriodicityProof(ProofStatus.PROVEN, reason, orbits, x0)
