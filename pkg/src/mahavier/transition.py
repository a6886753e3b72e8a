"""Sparse 0/1 transition matrices and exact walk counts."""

from dataclasses import dataclass, field
from functools import cached_property
from typing import FrozenSet, List, Tuple

import numpy as np
from scipy.sparse import csr_matrix

from src.core.relation import Cell, Relation, RelationKind
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


@dataclass(frozen=True)
class TransitionMatrix:
    """
    Cell-compatibility matrix of a rasterized relation.

    Entry (i, j) is present when cell (i, j) is occupied. A Mahavier
    sequence (x_1, ..., x_{m+1}) with (x_{k+1}, x_k) in G reads as the walk
    c_{m+1} -> ... -> c_1 along entries.
    """

    n: int
    entries: FrozenSet[Cell] = field(default_factory=frozenset)

    @cached_property
    def csr(self) -> csr_matrix:
        if not self.entries:
            return csr_matrix((self.n, self.n), dtype=np.int64)
        rows, cols = zip(*sorted(self.entries))
        data = np.ones(len(rows), dtype=np.int64)
        return csr_matrix((data, (rows, cols)), shape=(self.n, self.n))

    def transpose(self) -> "TransitionMatrix":
        return TransitionMatrix(self.n, frozenset((j, i) for i, j in self.entries))

    def is_empty(self) -> bool:
        return not self.entries

    def successors(self) -> List[Tuple[int, ...]]:
        matrix = self.csr
        return [
            tuple(int(j) for j in matrix.indices[matrix.indptr[i]:matrix.indptr[i + 1]])
            for i in range(self.n)
        ]


def transition_matrix(G: Relation) -> TransitionMatrix:
    """Matrix of a bitmap relation; entry (i, j) iff cell (i, j) is occupied."""
    G.require(RelationKind.GRID)
    return TransitionMatrix(G.grid.n, G.grid.cells)


def walk_counts(T: TransitionMatrix, m_max: int) -> List[int]:
    """
    Exact N_1, ..., N_{m_max}: sums of entries of T**m.

    Uses Python integers on the row-compressed structure so counts never
    overflow; the order of additions is fixed, so results are reproducible.
    """
    successors = T.successors()
    vector = [1] * T.n
    counts = []
    for _ in range(m_max):
        vector = [sum(vector[j] for j in row) for row in successors]
        counts.append(sum(vector))
    return counts
