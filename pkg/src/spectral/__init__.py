"""
Spectral Machinery

Normalized adjacency spectra, top-eigenspace projectors, and the L_p and
p->q norm bounds computed on them.
"""

from .operators import (
    SymmetricOperator, Spectrum, Projector,
    normalized_adjacency, eigendecompose, top_eigenspace, projector_for, random_symmetric,
)
from .norms import (
    NormEstimate, lp_norm, lp_counting_norm, inner, holder_dual, ratio,
    two_to_inf_norm, one_to_inf_bound, pq_norm_upper, pq_norm_upper_dual,
    dual_witness, upper_bound_with_method, is_hypercontractive, as_matrix,
)
from .search import pq_norm_lower, ascend, ascend_batch, row_norms

__all__ = [
    "SymmetricOperator", "Spectrum", "Projector",
    "normalized_adjacency", "eigendecompose", "top_eigenspace", "projector_for",
    "random_symmetric",
    "NormEstimate", "lp_norm", "lp_counting_norm", "inner", "holder_dual", "ratio",
    "two_to_inf_norm", "one_to_inf_bound", "pq_norm_upper", "pq_norm_upper_dual",
    "dual_witness", "upper_bound_with_method", "is_hypercontractive", "as_matrix",
    "pq_norm_lower", "ascend", "ascend_batch", "row_norms",
]
