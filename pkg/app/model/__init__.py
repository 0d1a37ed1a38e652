"""
Model module initialization.
"""

from app.model.models import (
    CpFitCoefficients,
    PhysicalParams,
    CpParams,
    ThetaParams,
    EtaParams,
    GVector,
)
from app.model.curve import (
    swept_area,
    cp_general,
    cp_reduced,
    cp_max,
    c_from_kappas,
    z_star,
    mechanical_torque,
)
from app.model.maps import (
    PRIOR_LOWER,
    PRIOR_UPPER,
    theta_from_c,
    c_from_theta,
    eta_from_theta,
    theta_from_eta,
    g_of_theta,
    w_of_eta,
    w_jacobian,
    t_matrix,
    alpha_bound_from_c,
    alpha_lower_bound,
    alpha_from_prior,
    monotonicity_margin,
)
from app.model.dynamics import z_dot_s1, z_dot_s2, disturbance_tau_d
from app.model.errors import PreconditionError, NumericAbortError

__all__ = [
    "PRIOR_LOWER",
    "PRIOR_UPPER",
    "CpFitCoefficients",
    "PhysicalParams",
    "CpParams",
    "ThetaParams",
    "EtaParams",
    "GVector",
    "swept_area",
    "cp_general",
    "cp_reduced",
    "cp_max",
    "c_from_kappas",
    "z_star",
    "mechanical_torque",
    "theta_from_c",
    "c_from_theta",
    "eta_from_theta",
    "theta_from_eta",
    "g_of_theta",
    "w_of_eta",
    "w_jacobian",
    "t_matrix",
    "alpha_bound_from_c",
    "alpha_lower_bound",
    "alpha_from_prior",
    "monotonicity_margin",
    "z_dot_s1",
    "z_dot_s2",
    "disturbance_tau_d",
    "PreconditionError",
    "NumericAbortError",
]
