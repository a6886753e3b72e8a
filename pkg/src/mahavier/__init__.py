"""Grid covers, Mahavier box counts and entropy estimates."""

from src.mahavier.entropy import (
    EntropyReport,
    box_count,
    box_counts,
    entropy_sequence,
    finite_walk_count,
    grid_matrix,
    mahavier_members,
    resolution_sweep,
)
from src.mahavier.grid import CellSemantics, GridCover, rasterize
from src.mahavier.spectral import (
    SpectralEstimate,
    finite_digraph,
    finite_entropy,
    spectral_entropy,
)
from src.mahavier.checks import (
    check_grid_bound,
    check_inverse_invariance,
    check_refinement,
    check_subadditivity,
    check_subset_monotonicity,
)
from src.mahavier.transition import TransitionMatrix, transition_matrix, walk_counts

__all__ = [
    "CellSemantics",
    "GridCover",
    "rasterize",
    "TransitionMatrix",
    "transition_matrix",
    "walk_counts",
    "SpectralEstimate",
    "spectral_entropy",
    "finite_digraph",
    "finite_entropy",
    "EntropyReport",
    "box_count",
    "box_counts",
    "entropy_sequence",
    "finite_walk_count",
    "grid_matrix",
    "mahavier_members",
    "resolution_sweep",
    "check_grid_bound",
    "check_inverse_invariance",
    "check_refinement",
    "check_subadditivity",
    "check_subset_monotonicity",
]
