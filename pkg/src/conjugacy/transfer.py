"""Topological conjugacy of relations and transfer of orbits, counts and finite sets."""

from dataclasses import dataclass
from typing import List, Literal, Optional

import networkx as nx
from pydantic import BaseModel, Field

from config.settings import settings
from src.core.errors import ConjugacyError
from src.core.homeomorphism import Homeomorphism
from src.core.relation import AffineSegment, Relation, RelationKind, subset
from src.core.scalar import Scalar
from src.mahavier.entropy import box_counts, finite_walk_count, grid_matrix
from src.mahavier.grid import CellSemantics
from src.mahavier.spectral import finite_digraph, finite_entropy, spectral_entropy
from src.orbits.models import PeriodicOrbit
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


def _map_segment(segment: AffineSegment, phi: Homeomorphism) -> List[AffineSegment]:
    """Image of a segment, cut where either coordinate meets a breakpoint of phi."""
    params = {segment.xlo, segment.xhi}
    for point in phi.breakpoints():
        if segment.param_range.contains(point):
            params.add(point)
        if segment.slope != 0:
            t = (point - segment.intercept) / segment.slope
            if segment.param_range.contains(t):
                params.add(t)
    ordered = sorted(params)
    if len(ordered) == 1:
        x, y = segment.point_at(ordered[0])
        return [AffineSegment(Scalar(0), phi(y), phi(x), phi(x))]
    pieces = []
    for lo, hi in zip(ordered, ordered[1:]):
        (x0, y0), (x1, y1) = segment.point_at(lo), segment.point_at(hi)
        pieces.append(AffineSegment.through((phi(x0), phi(y0)), (phi(x1), phi(y1))))
    return pieces


def apply_homeo(G: Relation, phi: Homeomorphism) -> Relation:
    """
    {(phi(x), phi(y)) : (x, y) in G}, exact and canonical, on phi.target.

    Raises:
        ConjugacyError: If phi does not start at G's ambient interval, or G
            is a bitmap and phi is not affine
    """
    if phi.source != G.ambient:
        raise ConjugacyError(
            f"Homeomorphism source [{phi.source.lo}, {phi.source.hi}] differs from the "
            f"ambient interval [{G.ambient.lo}, {G.ambient.hi}]"
        )
    if G.kind == RelationKind.POINTS:
        return Relation.from_points(((phi(x), phi(y)) for x, y in G.points), phi.target, G.d)
    if G.kind == RelationKind.SEGMENTS:
        pieces = [piece for segment in G.segments for piece in _map_segment(segment, phi)]
        return Relation.from_segments(pieces, phi.target, G.d)
    if not phi.is_affine():
        raise ConjugacyError("Bitmap cells only map to cells under affine maps: rasterize after mapping instead")
    n = G.grid.n
    if phi.is_increasing():
        cells = G.grid.cells
    else:
        cells = {(n - 1 - i, n - 1 - j) for i, j in G.grid.cells}
    return Relation.from_grid(n, cells, phi.target, G.d)


def are_conjugate(G: Relation, H: Relation, phi: Homeomorphism) -> bool:
    """True iff phi carries G exactly onto H."""
    if phi.source != G.ambient or phi.target != H.ambient:
        return False
    return apply_homeo(G, phi) == H


def conjugate_orbit(orbit: PeriodicOrbit, phi: Homeomorphism, H: Relation) -> PeriodicOrbit:
    """
    Pointwise image of a periodic orbit, re-verified against H.

    Raises:
        ConjugacyError: If the image is not an orbit of H
    """
    image = PeriodicOrbit(tuple(phi(x) for x in orbit.points), orbit.branch).canonical()
    if not image.verify(H):
        raise ConjugacyError(f"conjugacy broken: image of {orbit.points} is not an orbit of H")
    return image


class TransferReport(BaseModel):
    """Comparison of box counts (exact mode) or spectral estimates (approximate mode)."""

    mode: Literal["exact", "approximate", "finite"]
    resolution: int
    m_max: int
    counts_g: List[int] = Field(default_factory=list)
    counts_h: List[int] = Field(default_factory=list)
    entropy_g: Optional[float] = None
    entropy_h: Optional[float] = None
    tolerance: Optional[float] = None
    equal: bool


def entropy_transfer_check(G: Relation, H: Relation, phi: Homeomorphism, n: int,
                           m_max: int) -> TransferReport:
    """
    Compare entropy data of conjugate relations.

    Finite relations: walk counts and digraph isomorphism. Affine phi: an
    affine bijection maps the 2n-grid of G's ambient onto the 2n-grid of
    H's, so closed-cell box counts must agree as integers. Otherwise the
    spectral estimates at resolution n are compared within the configured
    tolerance.
    """
    if G.kind == RelationKind.POINTS and H.kind == RelationKind.POINTS:
        counts_g = [finite_walk_count(G, m) for m in range(1, m_max + 1)]
        counts_h = [finite_walk_count(H, m) for m in range(1, m_max + 1)]
        isomorphic = nx.is_isomorphic(finite_digraph(G), finite_digraph(H))
        return TransferReport(
            mode="finite", resolution=0, m_max=m_max, counts_g=counts_g, counts_h=counts_h,
            entropy_g=finite_entropy(G).value, entropy_h=finite_entropy(H).value,
            equal=isomorphic and counts_g == counts_h,
        )
    if phi.is_affine():
        resolution = 2 * n
        counts_g = box_counts(G, resolution, m_max, CellSemantics.CLOSED)
        counts_h = box_counts(H, resolution, m_max, CellSemantics.CLOSED)
        equal = counts_g == counts_h
        if not equal:
            logger.warning(f"Exact transfer mismatch at resolution {resolution}: {counts_g} vs {counts_h}")
        return TransferReport(mode="exact", resolution=resolution, m_max=m_max,
                              counts_g=counts_g, counts_h=counts_h, equal=equal)

    tolerance = settings.transfer_tolerance
    estimate_g = spectral_entropy(grid_matrix(G, n))
    estimate_h = spectral_entropy(grid_matrix(H, n))
    return TransferReport(
        mode="approximate", resolution=n, m_max=m_max,
        entropy_g=estimate_g.value, entropy_h=estimate_h.value, tolerance=tolerance,
        equal=abs(estimate_g.value - estimate_h.value) <= tolerance,
    )


@dataclass(frozen=True)
class FiniteTransfer:
    image: Relation
    isomorphic: bool
    contained: Optional[bool] = None


def finitely_generated_transfer(F: Relation, phi: Homeomorphism,
                                H: Optional[Relation] = None) -> FiniteTransfer:
    """
    Image of a finite subset under phi, with its digraph checked isomorphic
    to the original and, when H is given, containment in H checked.
    """
    F.require(RelationKind.POINTS)
    image = apply_homeo(F, phi)
    isomorphic = nx.is_isomorphic(finite_digraph(F), finite_digraph(image))
    contained = subset(image, H) if H is not None else None
    if not isomorphic:
        logger.error("Finite image digraph is not isomorphic to the original")
    return FiniteTransfer(image, isomorphic, contained)
