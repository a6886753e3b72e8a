"""Well-aligned subsets of relations and the entropy bounds they certify."""

from src.wellaligned.alignment import (
    AlignmentCheck,
    DeltaSplit,
    check_well_aligned,
    delta_split,
)
from src.wellaligned.certificate import (
    AlignmentWitness,
    Certificate,
    CertificateRecord,
    build_certificate,
    certify,
    concat,
)
from src.wellaligned.fibers import FiberEnvelope, FiberFunction, r_ell
from src.wellaligned.psi import epsilon_gap, psi_max, psi_value, uniform_bound
from src.wellaligned.replay import (
    BranchStep,
    branching_prefixes,
    is_mahavier_prefix,
    replay_branching,
    sample_heights,
)

__all__ = [
    "AlignmentCheck",
    "DeltaSplit",
    "check_well_aligned",
    "delta_split",
    "AlignmentWitness",
    "Certificate",
    "CertificateRecord",
    "build_certificate",
    "certify",
    "concat",
    "FiberEnvelope",
    "FiberFunction",
    "r_ell",
    "epsilon_gap",
    "psi_max",
    "psi_value",
    "uniform_bound",
    "BranchStep",
    "branching_prefixes",
    "is_mahavier_prefix",
    "replay_branching",
    "sample_heights",
]
