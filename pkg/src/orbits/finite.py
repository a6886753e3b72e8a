"""Cycles and periodic orbits of finite relations, via their coordinate digraph."""

from typing import List, Sequence, Tuple

import networkx as nx

from config.settings import settings
from src.core.errors import GuardExceededError, RelationError
from src.core.relation import Relation, RelationKind
from src.core.scalar import Scalar
from src.mahavier.spectral import finite_digraph
from src.orbits.models import PeriodicOrbit, canonical_rotation, minimal_period
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

Cycle = Tuple[Scalar, ...]


def _rotate_to_min(cycle: Sequence[Scalar]) -> Cycle:
    k = canonical_rotation(cycle)
    return tuple(cycle[k:]) + tuple(cycle[:k])


def cycles_of_finite(F: Relation) -> List[Cycle]:
    """
    All simple cycles of the digraph x -> y for (x, y) in F.

    Each cycle is reported once, rotated to start at its smallest vertex,
    and the list is sorted by (length, vertices).
    """
    F.require(RelationKind.POINTS)
    cycles = {_rotate_to_min(cycle) for cycle in nx.simple_cycles(finite_digraph(F))}
    return sorted(cycles, key=lambda cycle: (len(cycle), cycle))


def build_periodic_from_cycle(F: Relation, cycle: Sequence[Scalar]) -> PeriodicOrbit:
    """
    Periodic orbit whose infinite repetition lies in the infinite Mahavier product.

    The digraph cycle c_1 -> c_2 -> ... uses pairs (c_i, c_{i+1}) in F, so
    the orbit (x_{i+1}, x_i) in F runs through the cycle backwards.

    Raises:
        RelationError: If cycle is empty or not a cycle of F's digraph
    """
    F.require(RelationKind.POINTS)
    cycle = tuple(Scalar.coerce(v) for v in cycle)
    if not cycle:
        raise RelationError("invalid cycle: empty")
    pairs = set(F.points)
    p = len(cycle)
    for i in range(p):
        if (cycle[i], cycle[(i + 1) % p]) not in pairs:
            raise RelationError(f"invalid cycle: ({cycle[i]}, {cycle[(i + 1) % p]}) is not in F")

    points = tuple(reversed(cycle))
    # the repeated sequence must be a Mahavier prefix fixed by shifting p places
    sequence = points * 3
    if not all((sequence[i + 1], sequence[i]) in pairs for i in range(3 * p - 1)):
        raise RelationError("invalid cycle: repetition leaves the Mahavier product")
    if sequence[p:] != sequence[: 2 * p]:
        raise RelationError("invalid cycle: shift does not fix the repetition")

    period = minimal_period(points)
    return PeriodicOrbit(points[:period], tuple(reversed(points[:period]))).canonical()


def infinite_product_nonempty(F: Relation) -> bool:
    """An infinite sequence exists iff some walk is unbounded iff the digraph has a cycle."""
    F.require(RelationKind.POINTS)
    if F.is_empty():
        return False
    return not nx.is_directed_acyclic_graph(finite_digraph(F))


def finite_orbits(F: Relation, max_period: int) -> List[PeriodicOrbit]:
    """
    Every periodic orbit of period <= max_period, including non-simple ones.

    Closed walks are enumerated from their smallest point only, so each
    orbit appears once in its canonical rotation.

    Raises:
        GuardExceededError: If the walk enumeration exceeds the configured guard
    """
    F.require(RelationKind.POINTS)
    # orbit steps x_i -> x_{i+1} follow the reversed digraph
    forward = finite_digraph(F).reverse(copy=True)
    guard = settings.mahavier_guard
    visited = 0
    found: List[PeriodicOrbit] = []

    for start in sorted(forward.nodes):
        stack = [(start,)]
        while stack:
            walk = stack.pop()
            visited += 1
            if visited > guard:
                raise GuardExceededError(
                    f"Orbit enumeration visited more than {guard} walks; lower max_period"
                )
            last = walk[-1]
            if forward.has_edge(last, start) and minimal_period(walk) == len(walk):
                if canonical_rotation(walk) == 0:
                    found.append(PeriodicOrbit(walk, tuple(reversed(walk))))
            if len(walk) < max_period:
                for nxt in sorted(forward.successors(last), reverse=True):
                    if nxt >= start:
                        stack.append(walk + (nxt,))

    logger.debug(f"Finite orbit search visited {visited} walks, found {len(found)} orbits")
    return sorted(found, key=lambda orbit: (orbit.period, orbit.points))
