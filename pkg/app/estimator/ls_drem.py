"""
Interlaced least-squares / DREM estimator.

The least-squares stage estimates the four-dimensional image W(eta)
directly. Its information matrix F gives, through the adjugate of
I - f0 F, a scalar regression Y = Delta * W(eta) that drives a gradient
update of eta through the monotone map T * W.
"""

import logging
import math
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import eigvalsh

from app.estimator.models import EstimatorGains, EstimatorState, MixedSample
from app.model import CpParams, PhysicalParams, ThetaParams, c_from_theta
from app.model.errors import NumericAbortError, PreconditionError
from app.regressor.models import RegressorSample
from app.sim.integrator import rk4_step_sampled

logger = logging.getLogger(__name__)

SPD_FLOOR = 1e-14
ADJUGATE_TOLERANCE = 1e-10


# ============================================================================
# Least-squares stage
# ============================================================================

def ls_rhs(W_hat: np.ndarray, F: np.ndarray, y: np.ndarray, phi: np.ndarray, gamma_w: float) -> Tuple[np.ndarray, np.ndarray]:
    """Time derivatives of (W_hat, F)."""
    f_phi_t = F @ phi.T
    dW = gamma_w * (f_phi_t @ (y - phi @ W_hat))
    dF = -gamma_w * (f_phi_t @ f_phi_t.T)
    return dW, dF


def symmetrize(F: np.ndarray) -> np.ndarray:
    return 0.5 * (F + F.T)


def check_spd(F: np.ndarray, t: Optional[float] = None) -> Tuple[float, float]:
    """Return (lambda_min, lambda_max) of F, aborting when F is no longer positive definite."""
    eig = eigvalsh(F)
    if not np.all(np.isfinite(eig)) or eig[0] < SPD_FLOOR:
        raise NumericAbortError(f"information matrix lost positive definiteness: lambda_min={eig[0]}", t)
    return float(eig[0]), float(eig[-1])


def ls_update(state: EstimatorState, sample: RegressorSample, gamma_w: float, h: float) -> EstimatorState:
    """One fixed step of the least-squares stage with the sample held over the step."""
    if h <= 0:
        raise PreconditionError(f"step size must be positive, got {h}")

    def rhs(x: np.ndarray, u: RegressorSample) -> np.ndarray:
        dW, dF = ls_rhs(x[:4], x[4:].reshape(4, 4), u.y, u.phi, gamma_w)
        return np.concatenate((dW, dF.ravel()))

    x = np.concatenate((state.W_hat, state.F.ravel()))
    x = rk4_step_sampled(rhs, x, h, sample, sample, sample)
    F = symmetrize(x[4:].reshape(4, 4))
    check_spd(F, state.t + h)
    return EstimatorState(W_hat=x[:4].copy(), F=F, eta_hat=state.eta_hat, W0=state.W0, t=state.t + h)


# ============================================================================
# Mixing
# ============================================================================

def det_and_adjugate(m: np.ndarray) -> Tuple[float, np.ndarray]:
    """Determinant and adjugate of a 4x4 matrix by expansion in complementary 2x2 minors.

    Defined for singular matrices as well.
    """
    (a00, a01, a02, a03), (a10, a11, a12, a13), (a20, a21, a22, a23), (a30, a31, a32, a33) = m.tolist()

    s0 = a00 * a11 - a10 * a01
    s1 = a00 * a12 - a10 * a02
    s2 = a00 * a13 - a10 * a03
    s3 = a01 * a12 - a11 * a02
    s4 = a01 * a13 - a11 * a03
    s5 = a02 * a13 - a12 * a03

    c5 = a22 * a33 - a32 * a23
    c4 = a21 * a33 - a31 * a23
    c3 = a21 * a32 - a31 * a22
    c2 = a20 * a33 - a30 * a23
    c1 = a20 * a32 - a30 * a22
    c0 = a20 * a31 - a30 * a21

    det = s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0
    adj = np.array([
        [a11 * c5 - a12 * c4 + a13 * c3, -a01 * c5 + a02 * c4 - a03 * c3, a31 * s5 - a32 * s4 + a33 * s3, -a21 * s5 + a22 * s4 - a23 * s3],
        [-a10 * c5 + a12 * c2 - a13 * c1, a00 * c5 - a02 * c2 + a03 * c1, -a30 * s5 + a32 * s2 - a33 * s1, a20 * s5 - a22 * s2 + a23 * s1],
        [a10 * c4 - a11 * c2 + a13 * c0, -a00 * c4 + a01 * c2 - a03 * c0, a30 * s4 - a31 * s2 + a33 * s0, -a20 * s4 + a21 * s2 - a23 * s0],
        [-a10 * c3 + a11 * c1 - a12 * c0, a00 * c3 - a01 * c1 + a02 * c0, -a30 * s3 + a31 * s1 - a32 * s0, a20 * s3 - a21 * s1 + a22 * s0],
    ])
    return det, adj


def adjugate_gap(m: np.ndarray, det: float, adj: np.ndarray) -> float:
    """Scaled residual of adj(M) M = det(M) I."""
    scale = max(1.0, float(np.abs(adj).max()) * float(np.abs(m).max()))
    return float(np.abs(adj @ m - det * np.eye(m.shape[0])).max()) / scale


def mix(state: EstimatorState, f0: float, debug_checks: bool = False) -> MixedSample:
    """Scalar regressor Delta = det(I - f0 F) and Y = adj(I - f0 F)(W_hat - f0 F W0)."""
    m = np.eye(4) - f0 * state.F
    det, adj = det_and_adjugate(m)
    if debug_checks:
        gap = adjugate_gap(m, det, adj)
        if gap > ADJUGATE_TOLERANCE:
            raise NumericAbortError(f"adjugate identity violated by {gap:.3e}", state.t)
    Y = adj @ (state.W_hat - f0 * (state.F @ state.W0))
    return MixedSample(delta=det, Y=Y)


# ============================================================================
# Mixing stage (eta)
# ============================================================================

def eta_rhs(eta_hat: np.ndarray, delta: float, Y: np.ndarray, gains: EstimatorGains) -> np.ndarray:
    """Gradient update Gamma * Delta * T * (Y - Delta * W(eta_hat)) with the floor enforced.

    Components sitting on the projection floor are not allowed to decrease.
    """
    e1, e2, e3 = eta_hat.tolist()
    a = gains.alpha
    r = np.array([
        a * (Y[0] - delta * e1),
        a * (Y[1] - delta * e2),
        Y[3] - delta * e2 * e3,
    ])
    d = delta * (gains.Gamma @ r)
    blocked = (eta_hat <= gains.eta_floor) & (d < 0)
    if blocked.any():
        d[blocked] = 0.0
    return d


def eta_jacobian(eta_hat: np.ndarray, delta: float, gains: EstimatorGains) -> np.ndarray:
    """Jacobian of eta_rhs away from the floor: -Gamma Delta^2 T grad W(eta_hat)."""
    _, e2, e3 = eta_hat.tolist()
    a = gains.alpha
    t_grad_w = np.array([
        [a, 0.0, 0.0],
        [0.0, a, 0.0],
        [0.0, e3, e2],
    ])
    return -delta * delta * (gains.Gamma @ t_grad_w)


def project(eta_hat: np.ndarray, eta_floor: float) -> np.ndarray:
    """Componentwise clamp onto [eta_floor, inf)."""
    if eta_floor <= 0:
        raise PreconditionError("the projection floor must be positive")
    return np.maximum(np.asarray(eta_hat, dtype=float), eta_floor)


def integrate_eta(
    eta_hat: np.ndarray,
    t0: float,
    h: float,
    deltas: Sequence[float],
    ys: Sequence[np.ndarray],
    gains: EstimatorGains,
) -> np.ndarray:
    """Integrate the mixing stage across samples of (Delta, Y) taken every h from t0.

    The stage is stiff (rates scale with Gamma * alpha * Delta^2), so it is
    handed to LSODA with the analytic Jacobian; (Delta, Y) are linearly
    interpolated between samples.
    """
    deltas = np.asarray(deltas, dtype=float)
    ys = np.asarray(ys, dtype=float)
    n = len(deltas) - 1
    if n < 1:
        return np.array(eta_hat, dtype=float)
    if not np.any(deltas):
        return project(eta_hat, gains.eta_floor)

    def sample(t: float) -> Tuple[float, np.ndarray]:
        s = min(max((t - t0) / h, 0.0), float(n))
        k = min(int(s), n - 1)
        frac = s - k
        delta = deltas[k] + frac * (deltas[k + 1] - deltas[k])
        Y = ys[k] + frac * (ys[k + 1] - ys[k])
        return delta, Y

    def fun(t: float, eta: np.ndarray) -> np.ndarray:
        delta, Y = sample(t)
        return eta_rhs(eta, delta, Y, gains)

    def jac(t: float, eta: np.ndarray) -> np.ndarray:
        delta, _ = sample(t)
        return eta_jacobian(eta, delta, gains)

    sol = solve_ivp(
        fun,
        (t0, t0 + n * h),
        np.asarray(eta_hat, dtype=float),
        method="LSODA",
        jac=jac,
        rtol=1e-10,
        atol=1e-14,
    )
    if not sol.success:
        raise NumericAbortError(f"mixing stage integration failed: {sol.message}", t0 + n * h)
    return project(sol.y[:, -1], gains.eta_floor)


def eta_update(state: EstimatorState, mixed: MixedSample, gains: EstimatorGains, h: float) -> EstimatorState:
    """One step of the mixing stage with the mixed sample held over the step, followed by projection."""
    if h <= 0:
        raise PreconditionError(f"step size must be positive, got {h}")
    eta = integrate_eta(state.eta_hat, state.t, h, [mixed.delta] * 2, [mixed.Y] * 2, gains)
    return EstimatorState(W_hat=state.W_hat, F=state.F, eta_hat=eta, W0=state.W0, t=state.t)


# ============================================================================
# Recovery and diagnostics
# ============================================================================

def c_hat(eta_hat: np.ndarray, z0: float, phys: PhysicalParams, v_w: Optional[float]) -> CpParams:
    """Curve parameters recovered from eta_hat.

    ``v_w=None`` recovers through the wind-independent parameterization.
    """
    e1, e2, e3 = [float(e) for e in eta_hat]
    if e1 <= 0:
        raise PreconditionError("eta_hat1 must be positive")
    scale = math.exp(e3 * z0)
    theta = ThetaParams(scale * e1, scale * e2, e3, wind_scaled=v_w is not None)
    return c_from_theta(theta, phys, v_w)


def lyapunov(eta_hat: np.ndarray, eta_true: np.ndarray, Gamma: np.ndarray) -> float:
    """U = 1/2 * eta_err^T Gamma^-1 eta_err."""
    err = np.asarray(eta_hat) - np.asarray(eta_true)
    return 0.5 * float(err @ np.linalg.solve(Gamma, err))
