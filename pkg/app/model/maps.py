"""
Parameter maps between the physical curve and the regression space.

The chain is c -> theta -> eta and theta -> G (equivalently eta -> W),
together with the monotonicity certificate of T*W.
"""

import math
from typing import Optional, Sequence, Union

import numpy as np

from app.model.errors import PreconditionError
from app.model.models import CpParams, EtaParams, GVector, PhysicalParams, ThetaParams

EtaLike = Union[EtaParams, Sequence[float], np.ndarray]

# Default prior box on c around the fitted Cp curve.
PRIOR_LOWER = CpParams(55.0, 0.13, 10.5)
PRIOR_UPPER = CpParams(75.0, 0.16, 12.0)


def _eta_tuple(eta: EtaLike):
    if isinstance(eta, EtaParams):
        return eta.as_tuple()
    e = np.asarray(eta, dtype=float)
    return float(e[0]), float(e[1]), float(e[2])


def _scale(phys: PhysicalParams, v_w: Optional[float]) -> float:
    if v_w is None:
        return phys.kappa / phys.J
    if v_w <= 0:
        raise PreconditionError(f"wind speed must be positive, got {v_w}")
    return phys.kappa * v_w / phys.J


def theta_from_c(c: CpParams, phys: PhysicalParams, v_w: Optional[float]) -> ThetaParams:
    """Map curve parameters to theta.

    Passing ``v_w=None`` gives the wind-independent variant used when the
    generator torque cancels the wind-derivative term.
    """
    s = _scale(phys, v_w)
    return ThetaParams(
        theta1=s * c.c1,
        theta2=s * c.c1 * c.c2,
        theta3=c.c3,
        wind_scaled=v_w is not None,
    )


def c_from_theta(theta: ThetaParams, phys: PhysicalParams, v_w: Optional[float]) -> CpParams:
    """Inverse of theta_from_c."""
    if theta.theta1 == 0:
        raise PreconditionError("theta1 = 0 makes the inverse map singular")
    if theta.wind_scaled and v_w is None:
        raise PreconditionError("wind speed is required for wind-scaled theta")
    s = _scale(phys, v_w if theta.wind_scaled else None)
    return CpParams(
        c1=theta.theta1 / s,
        c2=theta.theta2 / theta.theta1,
        c3=theta.theta3,
    )


def eta_from_theta(theta: ThetaParams, z0: float) -> EtaParams:
    scale = math.exp(-theta.theta3 * z0)
    return EtaParams(
        eta1=scale * theta.theta1,
        eta2=scale * theta.theta2,
        eta3=theta.theta3,
        z0=z0,
    )


def theta_from_eta(eta: EtaParams, z0: Optional[float] = None, wind_scaled: bool = True) -> ThetaParams:
    z0 = eta.z0 if z0 is None else z0
    scale = math.exp(eta.eta3 * z0)
    return ThetaParams(
        theta1=scale * eta.eta1,
        theta2=scale * eta.eta2,
        theta3=eta.eta3,
        wind_scaled=wind_scaled,
    )


def g_of_theta(theta: ThetaParams, z0: float) -> GVector:
    scale = math.exp(-theta.theta3 * z0)
    t1, t2, t3 = theta.as_tuple()
    return GVector(scale * t1, scale * t2, scale * t1 * t3, scale * t2 * t3)


def w_of_eta(eta: EtaLike) -> GVector:
    e1, e2, e3 = _eta_tuple(eta)
    return GVector(e1, e2, e1 * e3, e2 * e3)


def w_jacobian(eta: EtaLike) -> np.ndarray:
    """Jacobian of w_of_eta (4x3)."""
    e1, e2, e3 = _eta_tuple(eta)
    return np.array([
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [e3, 0.0, e1],
        [0.0, e3, e2],
    ])


def t_matrix(alpha: float) -> np.ndarray:
    """Mixing matrix T (3x4) whose only free entry is alpha."""
    return np.array([
        [alpha, 0.0, 0.0, 0.0],
        [0.0, alpha, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ])


def alpha_bound_from_c(c: CpParams, phys: PhysicalParams, z0: float, v_w: Optional[float]) -> float:
    """Lower bound on alpha written in physical parameters (z0 = v_w / omega(0))."""
    s = _scale(phys, v_w)
    return 0.25 * c.c3 ** 2 * math.exp(c.c3 * z0) / (s * c.c1 * c.c2)


def alpha_lower_bound(
    eta: EtaLike,
    c: Optional[CpParams] = None,
    phys: Optional[PhysicalParams] = None,
    v_w: Optional[float] = None,
) -> float:
    """Smallest alpha for which T*W is strictly monotone at eta.

    When ``c`` and ``phys`` are given the physical form is evaluated as well
    and both must agree.
    """
    _, e2, e3 = _eta_tuple(eta)
    if e2 <= 0:
        raise PreconditionError(f"eta2 must be positive, got {e2}")
    bound = 0.25 * e3 * e3 / e2
    if c is not None and phys is not None:
        if not isinstance(eta, EtaParams):
            raise PreconditionError("the physical form needs z0; pass EtaParams")
        physical = alpha_bound_from_c(c, phys, eta.z0, v_w)
        if not math.isclose(bound, physical, rel_tol=1e-9):
            raise PreconditionError(f"alpha bound mismatch: {bound} != {physical}")
    return bound


def alpha_from_prior(
    c_lower: CpParams,
    c_upper: CpParams,
    phys: PhysicalParams,
    z0: float,
    v_w: Optional[float],
    safety: float = 2.0,
) -> float:
    """Alpha that satisfies the bound for every c in the prior box.

    The bound decreases in c1 and c2 and grows in c3, so the worst corner
    is (c1 lower, c2 lower, c3 upper).
    """
    worst = CpParams(c_lower.c1, c_lower.c2, c_upper.c3)
    return safety * alpha_bound_from_c(worst, phys, z0, v_w)


def monotonicity_margin(eta: EtaLike, alpha: float) -> float:
    """Minimum eigenvalue of the symmetric part of T * grad W."""
    _, e2, e3 = _eta_tuple(eta)
    sym = np.array([
        [2.0 * alpha, 0.0, 0.0],
        [0.0, 2.0 * alpha, e3],
        [0.0, e3, 2.0 * e2],
    ])
    return float(np.linalg.eigvalsh(sym)[0])
