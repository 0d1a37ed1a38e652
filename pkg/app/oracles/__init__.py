"""
Verification oracles module initialization.
"""

from app.oracles.models import OracleReport
from app.oracles.oracles import (
    grid_argmax_cp,
    ode_reference_solution,
    finite_difference_jacobian,
    cofactor_adjugate,
)
from app.oracles.suite import check, check_names, run_checks

__all__ = [
    "OracleReport",
    "grid_argmax_cp",
    "ode_reference_solution",
    "finite_difference_jacobian",
    "cofactor_adjugate",
    "check",
    "check_names",
    "run_checks",
]
