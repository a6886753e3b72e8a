"""Orbit census with proof levels and the i-embedding classification."""

from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, Field

from config.settings import settings
from src.conjugacy.reduction import prove_no_periodic
from src.core.errors import GuardExceededError
from src.core.relation import Relation, RelationKind
from src.mahavier.entropy import entropy_sequence, grid_matrix
from src.mahavier.spectral import SpectralEstimate, finite_entropy, spectral_entropy
from src.orbits.census import search_periodic
from src.orbits.finite import infinite_product_nonempty
from src.orbits.models import OrbitCensus
from src.utils.logger import setup_logger
from src.wellaligned.certificate import CertificateRecord, certify

logger = setup_logger(__name__)


def orbit_census(G: Relation, max_period: int) -> OrbitCensus:
    """
    Exact orbit census up to max_period, upgraded to "proven" when the
    algebraic argument covers every period.
    """
    search = search_periodic(G, max_period)
    if G.kind == RelationKind.POINTS and not infinite_product_nonempty(G):
        return OrbitCensus.build(max_period, [], proven=True,
                                 note="the digraph has no cycle, so no infinite sequence exists")
    if G.kind == RelationKind.SEGMENTS:
        proof = prove_no_periodic(G)
        if proof.proven:
            expected = sorted(orbit.points for orbit in proof.orbits)
            found = sorted(orbit.points for orbit in search.orbits)
            if expected == found and not search.families:
                return OrbitCensus.build(max_period, search.orbits, proven=True, note=proof.reason)
            logger.error(f"Proof and search disagree for {G}: {expected} vs {found}")
        else:
            logger.debug(f"No proof for {G}: {proof.reason}")
    return OrbitCensus.build(max_period, search.orbits, search.families,
                             note=f"exhaustive up to period {max_period}")


class Verdict(str, Enum):
    I_EMBEDDED = "i_embedded"
    ALMOST_I_EMBEDDED = "almost_i_embedded"
    NEITHER = "neither"
    INCONCLUSIVE = "inconclusive"


class EntropyStatus(str, Enum):
    PROVEN_POSITIVE = "proven_positive"
    EVIDENCE_POSITIVE = "evidence_positive"
    EVIDENCE_ZERO = "evidence_zero"
    UNKNOWN = "unknown"


class EmbeddingVerdict(BaseModel):
    """Classification with a proof/evidence flag per clause."""

    verdict: Verdict
    entropy_status: EntropyStatus
    entropy_proof: bool
    periodic_proof: bool
    periodic_points: int
    lower_bound: Optional[float] = None
    spectral: Optional[float] = None
    certificate: Optional[CertificateRecord] = None
    census: OrbitCensus
    box_counts: List[int] = Field(default_factory=list, description="N_1..N_m_max on the n-grid")
    fekete_estimate: Optional[float] = Field(default=None, description="min_m log(N_m)/m")
    notes: List[str] = Field(default_factory=list)


def _entropy_evidence(G: Relation, n: int) -> SpectralEstimate:
    if G.kind == RelationKind.POINTS:
        return finite_entropy(G)
    return spectral_entropy(grid_matrix(G, n))


def classify_embedding(G: Relation, max_period: Optional[int] = None, n: Optional[int] = None,
                       m_max: Optional[int] = None) -> EmbeddingVerdict:
    """
    i-embedded (positive entropy, no periodic point), almost i-embedded
    (positive entropy, exactly one periodic point), neither, or inconclusive.

    A certificate proves positive entropy; otherwise the spectral estimate
    at resolution n is evidence. A periodic orbit of period p generates p
    periodic points. With m_max the box counts N_1..N_m_max on the same
    grid and their Fekete estimate are attached as further evidence.
    """
    max_period = max_period or settings.default_max_period
    n = n or settings.default_grid
    notes: List[str] = []
    counts: List[int] = []
    fekete = None
    if m_max is not None and m_max < 2:
        notes.append(f"box counts need m_max >= 2, got {m_max}")
    elif m_max is not None and not G.is_empty():
        try:
            sequence = entropy_sequence(G, n, m_max)
            counts, fekete = sequence.counts, sequence.estimate
            if not (sequence.subadditive_ok and sequence.grid_bound_ok):
                notes.append(f"box counts at n={n} violate an exact inequality")
        except GuardExceededError as e:
            notes.append(str(e))

    certificate = None
    if G.kind in (RelationKind.POINTS, RelationKind.SEGMENTS):
        try:
            certificate = certify(G)
        except GuardExceededError as e:
            notes.append(str(e))
    estimate = _entropy_evidence(G, n)

    if certificate is not None:
        status = EntropyStatus.PROVEN_POSITIVE
    elif estimate.no_growth:
        status = EntropyStatus.EVIDENCE_ZERO
    elif estimate.lower > 0:
        status = EntropyStatus.EVIDENCE_POSITIVE
    else:
        status = EntropyStatus.UNKNOWN

    if G.kind == RelationKind.GRID:
        census = OrbitCensus(max_period=max_period, note="periodic points of bitmaps are not searched")
        periodic_points = 0
        census_known = False
    else:
        census = orbit_census(G, max_period)
        periodic_points = sum(orbit.period for orbit in census.orbits)
        census_known = True
        if census.families:
            notes.append("one-parameter orbit families: infinitely many periodic points")
            periodic_points = max(periodic_points, 2)

    positive = status in (EntropyStatus.PROVEN_POSITIVE, EntropyStatus.EVIDENCE_POSITIVE)
    if census_known and periodic_points > 1:
        verdict = Verdict.NEITHER
    elif status == EntropyStatus.EVIDENCE_ZERO:
        verdict = Verdict.NEITHER
    elif not positive or not census_known:
        verdict = Verdict.INCONCLUSIVE
    elif periodic_points == 0:
        verdict = Verdict.I_EMBEDDED
    else:
        verdict = Verdict.ALMOST_I_EMBEDDED

    if census.proof_level != "proven" and verdict in (Verdict.I_EMBEDDED, Verdict.ALMOST_I_EMBEDDED):
        notes.append(f"periodic points excluded only up to period {max_period}")

    logger.info(f"Classified {G} as {verdict.value} (entropy {status.value}, "
                f"{periodic_points} periodic points, census {census.proof_level})")
    return EmbeddingVerdict(
        verdict=verdict,
        entropy_status=status,
        entropy_proof=certificate is not None,
        periodic_proof=census.proof_level == "proven",
        periodic_points=periodic_points,
        lower_bound=certificate.lower_bound if certificate else None,
        spectral=estimate.value if not estimate.no_growth else None,
        certificate=certificate.to_record() if certificate else None,
        census=census,
        box_counts=counts,
        fekete_estimate=fekete,
        notes=notes,
    )
