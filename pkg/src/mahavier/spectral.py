"""Perron-root estimates with Collatz-Wielandt enclosures."""

import math
from typing import Dict, Optional, Tuple

import networkx as nx
import numpy as np
from pydantic import BaseModel
from scipy.sparse import identity
from scipy.sparse.csgraph import connected_components

from config.settings import settings
from src.core.relation import Relation, RelationKind
from src.core.scalar import Scalar
from src.mahavier.transition import TransitionMatrix
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

# relative slack for floating-point rounding in the ratio bounds
_ROUNDING_PAD = 1e-12


class SpectralEstimate(BaseModel):
    """log of the spectral radius with an enclosure [lower, upper]."""

    value: float
    lower: float
    upper: float
    radius_lower: float
    radius_upper: float
    no_growth: bool = False
    converged: bool = True
    iterations: int = 0

    @property
    def width(self) -> float:
        return self.upper - self.lower


def _block_radius(block, tolerance: float, max_iterations: int) -> Tuple[float, float, int, bool]:
    """
    Enclose the Perron root of an irreducible nonnegative block.

    Iterates with block + I, which is primitive, so the iteration converges
    even for periodic blocks; for a positive vector x every ratio
    ((A + I)x)_i / x_i brackets rho + 1.
    """
    size = block.shape[0]
    shifted = (block + identity(size, format="csr", dtype=np.float64)).tocsr()
    x = np.ones(size, dtype=np.float64)
    lower, upper = 0.0, math.inf
    for iteration in range(1, max_iterations + 1):
        y = shifted @ x
        ratios = y / x
        lower, upper = float(ratios.min()), float(ratios.max())
        if upper - lower <= tolerance * upper:
            return lower - 1.0, upper - 1.0, iteration, True
        x = y / y.max()
    logger.warning(f"Power iteration stopped after {max_iterations} steps "
                   f"with ratio spread {upper - lower:.3e}")
    return lower - 1.0, upper - 1.0, max_iterations, False


def spectral_entropy(T: TransitionMatrix, tolerance: Optional[float] = None,
                     max_iterations: Optional[int] = None) -> SpectralEstimate:
    """
    log of the Perron root of T, enclosed by Collatz-Wielandt bounds.

    The radius of a reducible matrix is the largest radius of its strongly
    connected blocks, so each nontrivial block is iterated separately.
    Without any cycle the walk counts die out and the estimate carries the
    no_growth flag with value 0.
    """
    tolerance = tolerance or settings.spectral_tolerance
    max_iterations = max_iterations or settings.spectral_max_iterations
    matrix = T.csr.astype(np.float64)
    if T.is_empty():
        return SpectralEstimate(value=0.0, lower=0.0, upper=0.0, radius_lower=0.0,
                                radius_upper=0.0, no_growth=True)
    count, labels = connected_components(matrix, directed=True, connection="strong")
    best_lower, best_upper = 0.0, 0.0
    iterations, converged, has_cycle = 0, True, False
    diagonal = matrix.diagonal()
    for label in range(count):
        members = np.flatnonzero(labels == label)
        if members.size == 1 and diagonal[members[0]] == 0:
            continue
        has_cycle = True
        block = matrix[members][:, members]
        lower, upper, steps, ok = _block_radius(block, tolerance, max_iterations)
        # an integer matrix with a cycle has radius at least 1
        lower = max(lower * (1 - _ROUNDING_PAD), 1.0)
        upper = max(upper * (1 + _ROUNDING_PAD), lower)
        best_lower, best_upper = max(best_lower, lower), max(best_upper, upper)
        iterations += steps
        converged = converged and ok
    if not has_cycle:
        return SpectralEstimate(value=0.0, lower=0.0, upper=0.0, radius_lower=0.0,
                                radius_upper=0.0, no_growth=True)
    radius = math.sqrt(best_lower * best_upper)
    logger.debug(f"Spectral radius in [{best_lower:.12f}, {best_upper:.12f}] "
                 f"after {iterations} iterations over {count} blocks")
    return SpectralEstimate(
        value=math.log(radius),
        lower=math.log(best_lower),
        upper=math.log(best_upper),
        radius_lower=best_lower,
        radius_upper=best_upper,
        converged=converged,
        iterations=iterations,
    )


def finite_digraph(F: Relation) -> nx.DiGraph:
    """Digraph on the coordinates of F with an edge x -> y for each (x, y) in F."""
    F.require(RelationKind.POINTS)
    graph = nx.DiGraph()
    graph.add_nodes_from(F.coordinates())
    graph.add_edges_from(F.points)
    return graph


def digraph_matrix(graph: nx.DiGraph) -> Tuple[TransitionMatrix, Dict[Scalar, int]]:
    index = {node: k for k, node in enumerate(sorted(graph.nodes))}
    entries = frozenset((index[u], index[v]) for u, v in graph.edges)
    return TransitionMatrix(len(index), entries), index


def finite_entropy(F: Relation) -> SpectralEstimate:
    """
    log spectral radius of the coordinate digraph of a finite relation.

    Once a grid is finer than the smallest gap between coordinates, distinct
    coordinates sit in distinct cells and N_m equals the digraph walk count,
    so this is the limit of the box counts.
    """
    matrix, _ = digraph_matrix(finite_digraph(F))
    return spectral_entropy(matrix)
