"""Box counts of Mahavier products, entropy sequences and resolution sweeps."""

import math
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from config.settings import settings
from src.core.errors import GuardExceededError, RelationError
from src.core.relation import Relation, RelationKind
from src.core.scalar import Scalar
from src.mahavier.grid import CellSemantics, default_semantics, rasterize
from src.mahavier.spectral import (
    SpectralEstimate,
    digraph_matrix,
    finite_digraph,
    spectral_entropy,
)
from src.mahavier.transition import TransitionMatrix, transition_matrix, walk_counts
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


def _exact_depth(m: int) -> None:
    if m < 1:
        raise RelationError(f"Mahavier depth must be at least 1, got {m}")
    if m > settings.max_exact_m:
        raise GuardExceededError(
            f"Exact counting is limited to m <= {settings.max_exact_m}, got {m}"
        )


def grid_matrix(G: Relation, n: int, semantics: Optional[CellSemantics] = None) -> TransitionMatrix:
    return transition_matrix(rasterize(G, n, semantics))


def box_counts(G: Relation, n: int, m_max: int,
               semantics: Optional[CellSemantics] = None) -> List[int]:
    """N_1, ..., N_{m_max} for the n-grid; see box_count."""
    if G.is_empty():
        raise RelationError("entropy of the empty relation is 0 by definition, no counts")
    _exact_depth(m_max)
    return walk_counts(grid_matrix(G, n, semantics), m_max)


def box_count(G: Relation, n: int, m: int, semantics: Optional[CellSemantics] = None) -> int:
    """
    Number of cell sequences (c_1, ..., c_{m+1}) with every (c_{k+1}, c_k) occupied.

    Exact for bitmap relations, an outer bound for points and segments.

    Raises:
        RelationError: If G is empty
    """
    return box_counts(G, n, m, semantics)[m - 1]


def finite_walk_count(F: Relation, m: int) -> int:
    """Number of (x_1, ..., x_{m+1}) over coordinates of F with (x_{k+1}, x_k) in F."""
    matrix, _ = digraph_matrix(finite_digraph(F))
    return walk_counts(matrix, m)[m - 1]


def mahavier_members(F: Relation, m: int) -> List[Tuple[Scalar, ...]]:
    """
    Enumerate the m-th Mahavier product of a finite relation.

    Raises:
        GuardExceededError: If more than settings.mahavier_guard sequences exist
    """
    F.require(RelationKind.POINTS)
    if m < 1:
        raise RelationError(f"Mahavier depth must be at least 1, got {m}")
    total = finite_walk_count(F, m) if F.points else 0
    if total > settings.mahavier_guard:
        raise GuardExceededError(
            f"{total} Mahavier sequences exceed the guard of {settings.mahavier_guard}"
        )
    # x_{k+1} ranges over the first coordinates of pairs whose second is x_k
    preimages: Dict[Scalar, List[Scalar]] = {}
    for x, y in F.points:
        preimages.setdefault(y, []).append(x)
    sequences = [(value,) for value in F.coordinates()]
    for _ in range(m):
        sequences = [seq + (x,) for seq in sequences for x in preimages.get(seq[-1], [])]
    return sorted(sequences)


class EntropyReport(BaseModel):
    """Box counts on one grid, their Fekete ratios and the spectral estimate."""

    n: int
    m_max: int
    semantics: str
    approximation: str = Field(description="'exact' for bitmaps, 'outer' otherwise")
    counts: List[int] = Field(default_factory=list)
    ratios: List[float] = Field(default_factory=list)
    estimate: float = 0.0
    spectral: Optional[SpectralEstimate] = None
    subadditive_ok: bool = True
    grid_bound_ok: bool = True
    empty: bool = False


def fekete_ratios(counts: Sequence[int]) -> List[float]:
    """a_m / m with a_m = log N_m; N_m == 0 gives -inf."""
    return [math.log(c) / m if c > 0 else -math.inf for m, c in enumerate(counts, start=1)]


def entropy_sequence(G: Relation, n: int, m_max: int,
                     semantics: Optional[CellSemantics] = None) -> EntropyReport:
    """
    Counts, ratios and spectral estimate of G on the n-grid.

    The finite-m estimate is min_m a_m/m, which is the limit's best upper
    approximation because a_m is subadditive.
    """
    from src.mahavier.checks import check_grid_bound, check_subadditivity

    if m_max < 2:
        raise RelationError(f"m_max must be at least 2, got {m_max}")
    semantics = semantics or default_semantics()
    approximation = "exact" if G.kind == RelationKind.GRID else "outer"
    if G.is_empty():
        return EntropyReport(n=n, m_max=m_max, semantics=semantics.value,
                             approximation=approximation, empty=True)
    _exact_depth(m_max)
    matrix = grid_matrix(G, n, semantics)
    counts = walk_counts(matrix, m_max)
    ratios = fekete_ratios(counts)
    report = EntropyReport(
        n=n,
        m_max=m_max,
        semantics=semantics.value,
        approximation=approximation,
        counts=counts,
        ratios=ratios,
        estimate=max(min(ratios), 0.0) if counts[-1] > 0 else 0.0,
        spectral=spectral_entropy(matrix),
        subadditive_ok=check_subadditivity(counts),
        grid_bound_ok=check_grid_bound(counts, n),
    )
    logger.info(f"Entropy of {G} at n={n}: estimate {report.estimate:.6f}, "
                f"spectral {report.spectral.value:.6f}")
    return report


def resolution_sweep(G: Relation, ns: Sequence[int],
                     semantics: Optional[CellSemantics] = None) -> List[Tuple[int, SpectralEstimate]]:
    """Spectral estimates of the rasterizations of G at each resolution."""
    return [(n, spectral_entropy(grid_matrix(G, n, semantics))) for n in ns]
