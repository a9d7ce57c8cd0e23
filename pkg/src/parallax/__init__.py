"""Norm-parallelism and Birkhoff-James orthogonality for complex matrices.

Deciders and certificates for Schatten, Ky-Fan and induced operator norms,
numerical-range tools, a finite-dimensional Hilbert K(H)-module model and
brute-force oracles to cross-check all of them.
"""

from .certificates import (
    DualCertificate,
    ExtremePointDecomposition,
    OpNormCertificate,
    SchattenCheck,
    Sufficiency,
    extreme_point_check,
    kyfan_certificate,
    opnorm_parallel_decide,
    opnorm_range_condition,
    schatten_condition,
    trace_certificate,
    vector_level_sufficiency,
)
from .core_linalg import Svd, Tolerance, herm_eig, svd, top_singular_subspace
from .errors import ParallaxError, TieWarning
from .geometry import BjoVerdict, ParallelVerdict, is_bj_orthogonal, is_parallel, vector_parallel
from .kmodule import (
    ModuleElement,
    OrthonormalBasis,
    corollary_idempotent_check,
    minimal_projection,
    mod_inner,
    thm_a_check,
    thm_b_search,
    thm_L_check,
    transitivity_check,
)
from .norms import (
    SPECTRAL,
    TRACE,
    Induced,
    KyFan,
    NormHandle,
    Schatten,
    VectorNormTag,
    dual_norm,
    matrix_norm,
    parse_norm,
    trace_inner,
    vector_norm,
)
from .numrange import in_numerical_range, numerical_radius, support_value
from .oracle import OracleConfig, oracle_dual_norm, oracle_numerical_radius, oracle_parallel

__version__ = "0.1.0"

__all__ = [
    "BjoVerdict",
    "DualCertificate",
    "ExtremePointDecomposition",
    "Induced",
    "KyFan",
    "ModuleElement",
    "NormHandle",
    "OpNormCertificate",
    "OracleConfig",
    "OrthonormalBasis",
    "ParallaxError",
    "ParallelVerdict",
    "SPECTRAL",
    "Schatten",
    "SchattenCheck",
    "Sufficiency",
    "Svd",
    "TRACE",
    "TieWarning",
    "Tolerance",
    "VectorNormTag",
    "corollary_idempotent_check",
    "dual_norm",
    "extreme_point_check",
    "herm_eig",
    "in_numerical_range",
    "is_bj_orthogonal",
    "is_parallel",
    "kyfan_certificate",
    "matrix_norm",
    "minimal_projection",
    "mod_inner",
    "numerical_radius",
    "opnorm_parallel_decide",
    "opnorm_range_condition",
    "oracle_dual_norm",
    "oracle_numerical_radius",
    "oracle_parallel",
    "parse_norm",
    "schatten_condition",
    "support_value",
    "svd",
    "thm_L_check",
    "thm_a_check",
    "thm_b_search",
    "top_singular_subspace",
    "trace_certificate",
    "trace_inner",
    "transitivity_check",
    "vector_level_sufficiency",
    "vector_norm",
    "vector_parallel",
]
