"""Sparse MDS generator matrices from finite-field Pascal matrices.

Construction (truncated + supplemented Pascal, Reed-Solomon), exhaustive
MDS verification, erasure coding, and broadcast simulation over GF(p^h).
"""

from .codec import CodecConfig, DecodeError, Share, decode, encode
from .codes import (
    MdsVerdict,
    SubsetCapExceeded,
    decompose_supplemented,
    is_mds,
    rs_generator,
    supplement,
    uniform_matroid_representation,
)
from .fields import GF, field_from_order, make_field, parse_field_spec
from .matrices import (
    MatrixGF,
    SingularMatrixError,
    count_zeros,
    mat_mul,
    rank,
    solve,
    submatrix_columns,
    vec_mat_mul,
)
from .ncsim import SimConfig, SimReport, overhead_bits, run_sim
from .pascal import (
    binom,
    pascal_additive,
    pascal_matrix,
    sparsity_report,
    supplemented_pascal,
    truncated_pascal,
)

__version__ = "0.1.0"

__all__ = [
    "GF",
    "make_field",
    "parse_field_spec",
    "field_from_order",
    "MatrixGF",
    "SingularMatrixError",
    "rank",
    "solve",
    "submatrix_columns",
    "count_zeros",
    "mat_mul",
    "vec_mat_mul",
    "binom",
    "pascal_matrix",
    "truncated_pascal",
    "supplemented_pascal",
    "pascal_additive",
    "sparsity_report",
    "MdsVerdict",
    "SubsetCapExceeded",
    "is_mds",
    "rs_generator",
    "supplement",
    "uniform_matroid_representation",
    "decompose_supplemented",
    "CodecConfig",
    "Share",
    "encode",
    "decode",
    "DecodeError",
    "SimConfig",
    "SimReport",
    "run_sim",
    "overhead_bits",
]
