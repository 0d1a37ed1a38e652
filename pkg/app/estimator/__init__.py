"""
Interlaced least-squares / DREM estimator module initialization.
"""

from app.estimator.models import EstimatorGains, EstimatorState, MixedSample
from app.estimator.ls_drem import (
    ls_rhs,
    ls_update,
    symmetrize,
    check_spd,
    det_and_adjugate,
    adjugate_gap,
    mix,
    eta_rhs,
    eta_jacobian,
    integrate_eta,
    eta_update,
    project,
    c_hat,
    lyapunov,
)
from app.estimator.baseline import BaselineTrace, overparam_ls_baseline

__all__ = [
    "EstimatorGains",
    "EstimatorState",
    "MixedSample",
    "ls_rhs",
    "ls_update",
    "symmetrize",
    "check_spd",
    "det_and_adjugate",
    "adjugate_gap",
    "mix",
    "eta_rhs",
    "eta_jacobian",
    "integrate_eta",
    "eta_update",
    "project",
    "c_hat",
    "lyapunov",
    "BaselineTrace",
    "overparam_ls_baseline",
]
