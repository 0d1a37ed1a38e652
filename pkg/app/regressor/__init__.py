"""
Regressor builder module initialization.
"""

from app.regressor.models import XiState, FilterBank, RegressorState, RegressorSample
from app.regressor.builder import (
    N_STATES,
    init,
    regressor_rhs,
    regressor_output,
    advance,
    emit_sample,
)
from app.regressor.excitation import gram_matrix, ie_index
from app.regressor.identities import swapping_residual, key_identity_residual

__all__ = [
    "XiState",
    "FilterBank",
    "RegressorState",
    "RegressorSample",
    "N_STATES",
    "init",
    "regressor_rhs",
    "regressor_output",
    "advance",
    "emit_sample",
    "gram_matrix",
    "ie_index",
    "swapping_residual",
    "key_identity_residual",
]
