"""Moore-Penrose inverses of 2x2 block matrices built from block-sized {1}-inverses."""

from .errors import (
    DimensionError,
    GenInvError,
    IllConditionedWarning,
    MembershipError,
    NotComplementaryError,
    NotHermitianPSDError,
    NotProjectorError,
    SVDConvergenceError,
)
from .matrix import (
    Block2x2,
    BlockPartition,
    as_matrix,
    compose,
    conj_transpose,
    default_rank_tol,
    frobenius_norm,
    rank,
    split,
    svd_pinv,
)
from .geninv import (
    PenroseReport,
    is_member,
    one_inverse,
    one_inverse_sample,
    parse_classes,
    penrose_check,
    urquhart_123,
    urquhart_124,
    urquhart_mpi,
)
from .block import (
    BlockAux,
    BlockPinvResult,
    LRFactors,
    alt_LR,
    block_pinv,
    build_aux,
    build_L,
    build_R,
    corange_projector,
    gh_one_inverses,
    range_projector,
    rohde_one_inverse,
    sampled_supplier,
)
from .projectors import (
    SubspaceBasis,
    complement,
    constrained_inverse,
    oblique_projector,
    orthogonal_projector,
    projector_from_13,
    projector_from_14,
)

__version__ = "0.1.0"

__all__ = [
    "Block2x2",
    "BlockAux",
    "BlockPartition",
    "BlockPinvResult",
    "DimensionError",
    "GenInvError",
    "IllConditionedWarning",
    "LRFactors",
    "MembershipError",
    "NotComplementaryError",
    "NotHermitianPSDError",
    "NotProjectorError",
    "PenroseReport",
    "SVDConvergenceError",
    "SubspaceBasis",
    "alt_LR",
    "as_matrix",
    "block_pinv",
    "build_L",
    "build_R",
    "build_aux",
    "complement",
    "compose",
    "conj_transpose",
    "constrained_inverse",
    "corange_projector",
    "default_rank_tol",
    "frobenius_norm",
    "gh_one_inverses",
    "is_member",
    "oblique_projector",
    "one_inverse",
    "one_inverse_sample",
    "orthogonal_projector",
    "parse_classes",
    "penrose_check",
    "projector_from_13",
    "projector_from_14",
    "range_projector",
    "rank",
    "rohde_one_inverse",
    "sampled_supplier",
    "split",
    "svd_pinv",
    "urquhart_123",
    "urquhart_124",
    "urquhart_mpi",
]
