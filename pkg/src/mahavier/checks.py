"""Executable comparison checks for grid box counts.

All checks compare exact integers.
"""

from typing import List, Optional, Sequence

from src.core.relation import Relation, inverse, subset
from src.mahavier.entropy import box_counts
from src.mahavier.grid import CellSemantics
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


def check_subadditivity(counts: Sequence[int]) -> bool:
    """N_{m+k} <= N_m * N_k for every computed m, k (log form: a_{m+k} <= a_m + a_k)."""
    size = len(counts)
    for m in range(1, size + 1):
        for k in range(1, size - m + 1):
            if counts[m + k - 1] > counts[m - 1] * counts[k - 1]:
                logger.warning(f"Subadditivity fails at m={m}, k={k}")
                return False
    return True


def check_grid_bound(counts: Sequence[int], n: int) -> bool:
    """N_m <= n**(m+1): no more boxes than the grid has."""
    return all(c <= n ** (m + 1) for m, c in enumerate(counts, start=1))


def check_inverse_invariance(G: Relation, n: int, m_max: int,
                             semantics: Optional[CellSemantics] = None) -> bool:
    """Counts of G and of its inverse agree for every m <= m_max."""
    same = box_counts(G, n, m_max, semantics) == box_counts(inverse(G), n, m_max, semantics)
    if not same:
        logger.warning(f"Inverse invariance fails for {G} at n={n}")
    return same


def check_subset_monotonicity(H: Relation, G: Relation, n: int, m_max: int,
                              semantics: Optional[CellSemantics] = None) -> bool:
    """
    For H contained in G, counts of H never exceed counts of G.

    Raises:
        ValueError: If H is not a subset of G
    """
    if not subset(H, G):
        raise ValueError("check_subset_monotonicity needs H to be a subset of G")
    smaller = box_counts(H, n, m_max, semantics)
    larger = box_counts(G, n, m_max, semantics)
    return all(h <= g for h, g in zip(smaller, larger))


def refinement_gaps(G: Relation, n: int, m_max: int,
                    semantics: Optional[CellSemantics] = None) -> List[int]:
    """N_m(2n) - N_m(n) for m = 1..m_max."""
    coarse = box_counts(G, n, m_max, semantics)
    fine = box_counts(G, 2 * n, m_max, semantics)
    return [f - c for f, c in zip(fine, coarse)]


def check_refinement(G: Relation, n: int, m_max: int,
                     semantics: Optional[CellSemantics] = None) -> bool:
    """
    Counts on the 2n-grid are at least the counts on the n-grid.

    Walk counts of outer rasterizations can drop under refinement
    ({(0,1)} has N_2 = 1 at n = 1 and 0 at n = 2), so this is a diagnostic
    rather than a guaranteed property.
    """
    gaps = refinement_gaps(G, n, m_max, semantics)
    if any(gap < 0 for gap in gaps):
        logger.info(f"Refinement from n={n} lowers counts of {G}: {gaps}")
        return False
    return True
