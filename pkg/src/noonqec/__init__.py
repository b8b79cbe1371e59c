"""Photon-loss codes built from NOON states: construction, verification and resource models."""

from noonqec.analysis import (
    KLReport,
    analytic_fidelity,
    approximate_kl_order,
    kl_block,
    kl_verify,
    max_correctable_weight,
    numeric_fidelity,
)
from noonqec.codes import (
    Code,
    blockwise_splitter,
    logical_state,
    noon_code,
    noon_code_alternative,
    reference_code,
)
from noonqec.fock import SparseState, basis_state, combine, inner_product, normalize, tensor_product
from noonqec.loss import apply_loss_pattern, enumerate_loss_patterns, loss_weight_probability

__all__ = [
    "Code",
    "KLReport",
    "SparseState",
    "analytic_fidelity",
    "apply_loss_pattern",
    "approximate_kl_order",
    "basis_state",
    "blockwise_splitter",
    "combine",
    "enumerate_loss_patterns",
    "inner_product",
    "kl_block",
    "kl_verify",
    "logical_state",
    "loss_weight_probability",
    "max_correctable_weight",
    "noon_code",
    "noon_code_alternative",
    "normalize",
    "numeric_fidelity",
    "reference_code",
    "tensor_product",
]
