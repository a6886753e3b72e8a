"""Executable replay of the binary branching behind the entropy lower bound."""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from config.settings import settings
from src.core.errors import AlignmentInvariantError, GuardExceededError
from src.core.relation import Relation, contains, project
from src.core.scalar import Scalar
from src.wellaligned.alignment import delta_split
from src.wellaligned.certificate import Certificate, concat
from src.wellaligned.fibers import r_ell
from src.wellaligned.psi import psi_value
from src.utils.logger import setup_logger

logger = setup_logger(__name__)

Prefix = Tuple[Scalar, ...]


def is_mahavier_prefix(H: Relation, sequence: Sequence[Scalar]) -> bool:
    """(x_{i+1}, x_i) in H for every consecutive pair."""
    return all(contains(H, sequence[i + 1], sequence[i]) for i in range(len(sequence) - 1))


@dataclass(frozen=True)
class BranchStep:
    """Both continuations T(t)+t0 and T(t)+t1 of one anchor t."""

    anchor: Scalar
    trunk: Prefix
    t0: Scalar
    t1: Scalar
    valid_0: bool
    valid_1: bool

    @property
    def gap(self) -> Scalar:
        return self.t1 - self.t0

    @property
    def ok(self) -> bool:
        return self.valid_0 and self.valid_1


def _iterate_down(cert: Certificate, t: Scalar) -> Prefix:
    """T(t) without its first entry: r_L(t), ..., r_L^psi(t)(t)."""
    L, b = cert.witness.L, cert.witness.b
    steps = psi_value(L, b, t, cert.uniform_k)
    chain = []
    value = t
    for _ in range(steps):
        _, value = r_ell(L, value)
        chain.append(value)
    return tuple(chain)


def _branch_values(cert: Certificate, bottom: Scalar) -> Tuple[Scalar, Scalar]:
    """t0 = r_L(bottom) and t1 = l_R(bottom) for a bottom value at or below b."""
    _, t0 = r_ell(cert.witness.L, bottom)
    t1, _ = r_ell(cert.witness.R, bottom)
    return t0, t1


def replay_branching(cert: Certificate, G: Relation, t: Scalar) -> BranchStep:
    """
    Build T(t) and its two one-step continuations for t in p_2(L_b+).

    Both continuations are checked as Mahavier prefixes of the witness's
    relation (G or G^-1).
    """
    t = Scalar.coerce(t)
    H = cert.witness.relation(G)
    trunk = concat((t,), _iterate_down(cert, t))
    t0, t1 = _branch_values(cert, trunk[-1])
    return BranchStep(
        anchor=t,
        trunk=trunk,
        t0=t0,
        t1=t1,
        valid_0=is_mahavier_prefix(H, concat(trunk, (t0,))),
        valid_1=is_mahavier_prefix(H, concat(trunk, (t1,))),
    )


def branching_prefixes(cert: Certificate, G: Relation, t: Scalar,
                       depth: Optional[int] = None) -> List[Prefix]:
    """
    All 2**depth prefixes produced by iterating the branching construction.

    A 0-branch continues from l_R(t0) (after appending it), a 1-branch
    continues from t1 itself.

    Raises:
        GuardExceededError: If 2**depth exceeds the configured guard
        AlignmentInvariantError: If a produced prefix leaves the Mahavier product
    """
    depth = depth or settings.replay_depth
    if 2 ** depth > settings.mahavier_guard:
        raise GuardExceededError(f"2**{depth} prefixes exceed the guard")
    H = cert.witness.relation(G)
    R = cert.witness.R
    leaves: List[Prefix] = []

    def expand(prefix: Prefix, level: int) -> None:
        anchor = prefix[-1]
        trunk = concat(prefix, _iterate_down(cert, anchor))
        t0, t1 = _branch_values(cert, trunk[-1])
        zero, one = concat(trunk, (t0,)), concat(trunk, (t1,))
        if level == 1:
            leaves.extend((zero, one))
            return
        left_of_t0, _ = r_ell(R, t0)
        expand(concat(zero, (left_of_t0,)), level - 1)
        expand(one, level - 1)

    expand((Scalar.coerce(t),), depth)
    for prefix in leaves:
        if not is_mahavier_prefix(H, prefix):
            raise AlignmentInvariantError(f"Replayed prefix of length {len(prefix)} is not valid")
    logger.debug(f"Branching replay to depth {depth} produced {len(leaves)} prefixes")
    return leaves


def sample_heights(cert: Certificate, count: Optional[int] = None) -> List[Scalar]:
    """count evenly spaced rational heights inside p_2(L_b+), excluding b itself."""
    count = count or settings.replay_samples
    split = delta_split(cert.witness.L, cert.witness.b)
    heights = project(split.plus, 2)
    b = cert.witness.b
    samples: List[Scalar] = []
    parts = [part for part in heights if part.hi > b]
    if not parts:
        return samples
    per_part = max(1, count // len(parts))
    for part in parts:
        lo = max(part.lo, b)
        for k in range(1, per_part + 1):
            value = lo + (part.hi - lo) * Scalar(k) / per_part
            samples.append(value)
    return samples[:count]
