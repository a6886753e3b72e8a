"""Exact periodic-orbit search for segment and finite relations."""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from config.settings import settings
from src.core.errors import GuardExceededError, RelationError
from src.core.intervals import Interval
from src.core.relation import AffineSegment, Relation, RelationKind, project, restrict
from src.core.scalar import Scalar
from src.orbits.branches import AffineBranch, ComposedBranch
from src.orbits.finite import finite_orbits
from src.orbits.models import OrbitFamily, PeriodicOrbit, canonical_rotation, minimal_period
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


def periodic_core(G: Relation, max_rounds: int = 64) -> Relation:
    """
    Trim G to the pairs that can sit inside a bi-infinite sequence.

    Every pair (x_{k+1}, x_k) of a periodic orbit has x_{k+1} in p_2(G) and
    x_k in p_1(G); restricting to those and repeating until nothing changes
    keeps every periodic orbit. Shrinking that never stabilises stops after
    max_rounds, which still leaves a superset of the core.
    """
    G.require(RelationKind.POINTS, RelationKind.SEGMENTS)
    current = G
    for round_number in range(max_rounds):
        if current.is_empty():
            return current
        trimmed = restrict(current, xs=project(current, 2), ys=project(current, 1))
        if trimmed == current:
            logger.debug(f"Periodic core of {G} stable after {round_number} rounds")
            return current
        current = trimmed
    logger.debug(f"Periodic core of {G} still shrinking after {max_rounds} rounds")
    return current


def check_max_period(max_period: int) -> None:
    if max_period < 1:
        raise RelationError(f"max_period must be positive, got {max_period}")
    if max_period > settings.max_period_cap:
        raise GuardExceededError(
            f"max_period {max_period} exceeds the cap {settings.max_period_cap}; "
            f"raise MAX_PERIOD_CAP to search further"
        )


def _is_flat(segment: AffineSegment) -> bool:
    return not segment.transposed and segment.slope == 0 and not segment.is_degenerate()


def _solve_arc(arc: ComposedBranch, target: Scalar) -> Optional[Interval]:
    """Values of the arc's free coordinate for which its last point equals target."""
    if arc.domain is None:
        return None
    if arc.c == 0:
        return arc.domain if arc.e == target else None
    x = (target - arc.e) / arc.c
    return Interval.point(x) if arc.domain.contains(x) else None


@dataclass
class OrbitSearch:
    """Orbits and one-parameter families found up to max_period."""

    max_period: int
    orbits: List[PeriodicOrbit] = field(default_factory=list)
    families: List[OrbitFamily] = field(default_factory=list)


class _Collector:
    """Verifies, deduplicates and labels candidates found on the core."""

    def __init__(self, G: Relation, core: Relation):
        self.G = G
        self.core = core
        self.labels = [self._parent_index(s) for s in core.segments]
        self.seen: Dict[Tuple[Scalar, ...], PeriodicOrbit] = {}
        self.families: Dict[Tuple[int, ...], OrbitFamily] = {}

    def _parent_index(self, piece: AffineSegment) -> int:
        x, y = piece.point_at(piece.xlo)
        u, v = piece.point_at(piece.xhi)
        for index, segment in enumerate(self.G.segments):
            if segment.contains(x, y) and segment.contains(u, v):
                return index
        raise RelationError(f"Core piece {piece} is not part of any segment")

    def add_orbit(self, points: Sequence[Scalar], word: Sequence[int]) -> None:
        points = tuple(points)
        if minimal_period(points) < len(points):
            # the same points come out of a shorter word
            return
        orbit = PeriodicOrbit(points, tuple(self.labels[i] for i in word)).canonical()
        if orbit.points in self.seen:
            return
        if not orbit.verify(self.G):
            logger.error(f"Candidate orbit {orbit.points} failed exact verification")
            return
        self.seen[orbit.points] = orbit

    def add_family(self, word: Sequence[int], domain: Interval) -> None:
        word = tuple(self.labels[i] for i in word)
        if canonical_rotation(word) != 0 or minimal_period(word) < len(word):
            return
        self.families.setdefault(word, OrbitFamily(word, domain))

    def result(self, max_period: int) -> OrbitSearch:
        orbits = sorted(self.seen.values(), key=lambda orbit: (orbit.period, orbit.points))
        families = sorted(self.families.values(), key=lambda f: (f.period, f.word))
        return OrbitSearch(max_period, orbits, families)


def _walk(branches: Sequence[Optional[AffineBranch]], word: Sequence[int],
          arc_values: Sequence[Scalar]) -> List[Scalar]:
    """Orbit points x_1..x_p; horizontal steps jump to the next arc's solved value."""
    points = [arc_values[0]]
    arc = 0
    for index in word[:-1]:
        branch = branches[index]
        if branch is None:
            arc += 1
            points.append(arc_values[arc])
        else:
            points.append(branch(points[-1]))
    return points


def _search_invertible(core: Relation, branches: Sequence[Optional[AffineBranch]],
                       max_period: int, collector: _Collector) -> int:
    """Words avoiding horizontal pieces: solve c*x + e = x per word."""
    usable = [i for i, branch in enumerate(branches) if branch is not None]
    visited = 0

    def visit(word: Tuple[int, ...], state: ComposedBranch) -> None:
        nonlocal visited
        if state.domain is None:
            return
        visited += 1
        fixed = state.fixed_points()
        if fixed is not None:
            if fixed.is_point():
                collector.add_orbit(_walk(branches, word, [fixed.lo]), word)
            else:
                collector.add_family(word, fixed)
        if len(word) < max_period:
            for index in usable:
                visit(word + (index,), state.then(branches[index]))

    start = ComposedBranch.start(core.ambient.as_interval())
    for index in usable:
        visit((index,), start.then(branches[index]))
    return visited


def _search_through_flat(core: Relation, branches: Sequence[Optional[AffineBranch]],
                         max_period: int, collector: _Collector) -> int:
    """
    Words through horizontal pieces, rotated so the last step is horizontal.

    A horizontal piece pins x_k and frees x_{k+1}, so the orbit splits into
    independent arcs; each arc's free coordinate is solved exactly.
    """
    segments = core.segments
    flat = [i for i, branch in enumerate(branches) if branch is None]
    visited = 0

    def visit(last: int, word: Tuple[int, ...], arc: ComposedBranch,
              solved: Tuple[Scalar, ...]) -> None:
        nonlocal visited
        if arc.domain is None:
            return
        visited += 1
        closing = _solve_arc(arc, segments[last].intercept)
        if closing is not None:
            full = word + (last,)
            if closing.is_point():
                collector.add_orbit(_walk(branches, full, solved + (closing.lo,)), full)
            else:
                collector.add_family(full, closing)
        if len(word) + 1 >= max_period:
            return
        for index, branch in enumerate(branches):
            if branch is not None:
                visit(last, word + (index,), arc.then(branch), solved)
                continue
            pinned = _solve_arc(arc, segments[index].intercept)
            if pinned is None:
                continue
            if not pinned.is_point():
                collector.add_family(word + (index,), pinned)
                continue
            fresh = ComposedBranch.start(segments[index].param_range)
            visit(last, word + (index,), fresh, solved + (pinned.lo,))

    for last in flat:
        visit(last, (), ComposedBranch.start(segments[last].param_range), ())
    return visited


def search_periodic(G: Relation, max_period: int) -> OrbitSearch:
    """
    Orbits and orbit families of period <= max_period.

    Raises:
        GuardExceededError: If max_period exceeds the configured cap
        RepresentationError: For grid bitmaps
    """
    check_max_period(max_period)
    G.require(RelationKind.POINTS, RelationKind.SEGMENTS)
    core = periodic_core(G)
    if core.kind == RelationKind.POINTS:
        return OrbitSearch(max_period, finite_orbits(core, max_period))

    collector = _Collector(G, core)
    if core.is_empty():
        return collector.result(max_period)
    branches = [None if _is_flat(s) else AffineBranch.of_segment(s) for s in core.segments]
    visited = _search_invertible(core, branches, max_period, collector)
    if any(branch is None for branch in branches):
        visited += _search_through_flat(core, branches, max_period, collector)
    result = collector.result(max_period)
    logger.debug(
        f"Orbit search on {G} up to period {max_period}: {visited} words, "
        f"{len(result.orbits)} orbits, {len(result.families)} families"
    )
    return result


def find_periodic_orbits(G: Relation, max_period: int) -> List[PeriodicOrbit]:
    """
    Complete list of periodic orbits of period <= max_period, exact.

    One-parameter families (compositions equal to the identity) are not
    listed here; search_periodic reports them.

    Args:
        G: Segment or finite relation
        max_period: Largest period searched

    Returns:
        Orbits in canonical rotation sorted by (period, points)
    """
    result = search_periodic(G, max_period)
    if result.families:
        logger.warning(f"{G} has {len(result.families)} orbit families besides isolated orbits")
    return result.orbits
