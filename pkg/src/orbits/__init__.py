"""Periodic orbits generated by relations."""

from src.orbits.branches import AffineBranch, ComposedBranch, branch_compose
from src.orbits.census import (
    OrbitSearch,
    find_periodic_orbits,
    periodic_core,
    search_periodic,
)
from src.orbits.finite import (
    build_periodic_from_cycle,
    cycles_of_finite,
    finite_orbits,
    infinite_product_nonempty,
)
from src.orbits.models import OrbitCensus, OrbitFamily, PeriodicOrbit
from src.orbits.proofs import ProofResult, ProofStatus, prove_no_nonzero_periodic

__all__ = [
    "AffineBranch",
    "ComposedBranch",
    "branch_compose",
    "OrbitSearch",
    "find_periodic_orbits",
    "periodic_core",
    "search_periodic",
    "build_periodic_from_cycle",
    "cycles_of_finite",
    "finite_orbits",
    "infinite_product_nonempty",
    "OrbitCensus",
    "OrbitFamily",
    "PeriodicOrbit",
    "ProofResult",
    "ProofStatus",
    "prove_no_nonzero_periodic",
]
