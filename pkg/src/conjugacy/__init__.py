"""Topological conjugacy of relations."""

from src.conjugacy.reduction import (
    PeriodicityProof,
    Reduction,
    common_fixed_point,
    prove_no_periodic,
    reduce_to_origin,
)
from src.conjugacy.transfer import (
    FiniteTransfer,
    TransferReport,
    apply_homeo,
    are_conjugate,
    conjugate_orbit,
    entropy_transfer_check,
    finitely_generated_transfer,
)

__all__ = [
    "PeriodicityProof",
    "Reduction",
    "common_fixed_point",
    "prove_no_periodic",
    "reduce_to_origin",
    "FiniteTransfer",
    "TransferReport",
    "apply_homeo",
    "are_conjugate",
    "conjugate_orbit",
    "entropy_transfer_check",
    "finitely_generated_transfer",
]
