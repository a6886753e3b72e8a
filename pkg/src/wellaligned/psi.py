"""Iteration counts psi and the separation gap epsilon for well-aligned pairs."""

from typing import List, Set, Tuple

from config.settings import settings
from src.core.errors import AlignmentInvariantError, GuardExceededError, RelationError
from src.core.relation import Relation, RelationKind, project
from src.core.scalar import Scalar
from src.wellaligned.alignment import delta_split
from src.wellaligned.fibers import FiberEnvelope, FiberFunction, r_ell
from src.utils.logger import setup_logger

logger = setup_logger(__name__)


def uniform_bound(L: Relation, b: Scalar) -> Tuple[Scalar, int]:
    """
    Contraction ratio and the uniform iteration bound.

    With distances measured from the left end lo of the ambient interval,
    a_max = sup (r_L(t) - lo)/(t - lo) over t >= b in p_2(L); k is the
    smallest integer with a_max**k * (hi - lo) <= b - lo, so every t above b
    falls to b within k steps.

    Raises:
        AlignmentInvariantError: If a_max >= 1
    """
    b = Scalar.coerce(b)
    lo, hi = L.ambient.lo, L.ambient.hi
    if delta_split(L, b).upper.is_empty():
        raise RelationError("L has no point at or above b")
    r_l = FiberFunction(L, upper=True)
    domain = project(L, 2)
    candidates: List[Tuple[Scalar, Scalar]] = [
        (t, r_l(t)) for t in set(r_l.critical_points()) | {b} if t >= b and domain.contains(t)
    ]
    if r_l.envelope is not None:
        candidates.extend(
            (t, value) for t, value in r_l.envelope.one_sided_limits() if t >= b
        )
    ratio = max((value - lo) / (t - lo) for t, value in candidates)
    if ratio >= 1:
        raise AlignmentInvariantError(
            f"L_b+ and L_b touch the diagonal: sup r_L(t)/t = {ratio} >= 1"
        )
    k, reach = 1, ratio * (hi - lo)
    while reach > b - lo:
        k += 1
        reach = reach * ratio
    return ratio, k


def psi_value(L: Relation, b: Scalar, t: Scalar, limit: int) -> int:
    """
    0 when t <= b, otherwise the k with r_L^k(t) <= b < r_L^(k-1)(t).

    Raises:
        AlignmentInvariantError: If more than limit iterations are needed
    """
    b, t = Scalar.coerce(b), Scalar.coerce(t)
    if t <= b:
        r_ell(L, t)
        return 0
    k, value = 0, t
    while value > b:
        if k >= limit:
            raise AlignmentInvariantError(
                f"alignment invariant broken: r_L iterates of {t} stay above {b} after {limit} steps"
            )
        _, value = r_ell(L, value)
        k += 1
    return k


def psi_critical_points(L: Relation, b: Scalar, depth: int) -> List[Scalar]:
    """
    Heights where psi can change: b, fiber breakpoints and their r_L-preimages up to depth.

    Between two consecutive critical points every iterate r_L^i stays on
    one linear piece without crossing b, so psi is constant there.
    """
    r_l = FiberFunction(L, upper=True)
    base: Set[Scalar] = set(r_l.critical_points()) | {b}
    domain = project(L, 2)
    for part in domain:
        base.update((part.lo, part.hi))
    found = set(base)
    frontier = set(base)
    for _ in range(depth):
        fresh = set()
        for value in frontier:
            fresh.update(t for t in r_l.preimages(value) if t not in found)
        if not fresh:
            break
        found |= fresh
        frontier = fresh
        if len(found) > settings.mahavier_guard:
            raise GuardExceededError("Too many psi critical points")
    return sorted(t for t in found if domain.contains(t))


def psi_max(L: Relation, b: Scalar) -> Tuple[int, int]:
    """
    (max over p_2(L) of psi, uniform_k), computed exactly.

    psi is evaluated at every critical point and at the midpoints between
    consecutive ones that lie in p_2(L).
    """
    b = Scalar.coerce(b)
    _, uniform_k = uniform_bound(L, b)
    points = psi_critical_points(L, b, uniform_k + 1)
    domain = project(L, 2)
    heights = list(points) + [
        (u + v) / 2 for u, v in zip(points, points[1:]) if domain.contains((u + v) / 2)
    ]
    best = max(psi_value(L, b, t, uniform_k) for t in heights)
    logger.debug(f"psi = {best} over {len(heights)} heights, uniform bound {uniform_k}")
    return best, uniform_k


def epsilon_gap(L: Relation, R: Relation) -> Scalar:
    """
    inf{l_R(t) - r_L(t) : t in p_2(L) and p_2(R)}, exact.

    The gap is piecewise linear; its infimum is attained among the values at
    breakpoints and the one-sided limits of the linear pieces.

    Raises:
        RelationError: If the two range projections are disjoint
    """
    common = project(L, 2).intersect(project(R, 2))
    if common.is_empty():
        raise RelationError("epsilon needs p_2(L) and p_2(R) to intersect")
    if L.kind == RelationKind.POINTS or R.kind == RelationKind.POINTS:
        # a finite side makes the common range finite
        return min(r_ell(R, t)[0] - r_ell(L, t)[1] for t in common.points())

    r_l = FiberEnvelope(L, upper=True)
    l_r = FiberEnvelope(R, upper=False)
    heights = set(r_l.breakpoints) | set(l_r.breakpoints)
    for part in common:
        heights.update((part.lo, part.hi))
    values = [l_r(t) - r_l(t) for t in heights if common.contains(t)]

    cuts = sorted(t for t in heights if common.contains(t))
    for u, v in zip(cuts, cuts[1:]):
        middle = (u + v) / 2
        if not common.contains(middle):
            continue
        upper = next((p for p in r_l.pieces if p.gap.lo <= u and v <= p.gap.hi), None)
        lower = next((p for p in l_r.pieces if p.gap.lo <= u and v <= p.gap.hi), None)
        if upper is None or lower is None:
            continue
        values.extend((lower(u) - upper(u), lower(v) - upper(v)))
    return min(values)
