"""
Vector fields of the speed-ratio coordinate z = v_w / omega.
"""

import math

import numpy as np
from scipy.integrate import cumulative_trapezoid

from app.model.errors import PreconditionError
from app.model.models import ThetaParams


def z_dot_s1(z: float, tau: float, theta: ThetaParams) -> float:
    """z-dynamics under constant wind; tau = Te / (J v_w)."""
    if z < 0:
        raise PreconditionError(f"z must be non-negative, got {z}")
    return -z ** 3 * (theta.theta1 * z - theta.theta2) * math.exp(-theta.theta3 * z) + z * z * tau


def z_dot_s2(z: float, v_w: float, theta_bar: ThetaParams) -> float:
    """z-dynamics when the generator torque cancels the wind-derivative term."""
    if z < 0:
        raise PreconditionError(f"z must be non-negative, got {z}")
    if v_w < 0:
        raise PreconditionError(f"wind speed must be non-negative, got {v_w}")
    return -v_w * z ** 3 * (theta_bar.theta1 * z - theta_bar.theta2) * math.exp(-theta_bar.theta3 * z)


def disturbance_tau_d(t: np.ndarray, z: np.ndarray, z_dot: np.ndarray, tau: np.ndarray, theta: ThetaParams) -> np.ndarray:
    """Additive term left in the key identity when the electrical torque is non-zero.

    The running integral is accumulated with the trapezoidal rule over the
    sampled history.
    """
    t = np.asarray(t, dtype=float)
    z = np.asarray(z, dtype=float)
    z_dot = np.asarray(z_dot, dtype=float)
    tau = np.broadcast_to(np.asarray(tau, dtype=float), t.shape)
    if t.size == 0:
        return np.zeros(0)

    weighted = tau * np.exp(theta.theta3 * z) * z * z
    running = cumulative_trapezoid(weighted, t, initial=0.0)
    return weighted - theta.theta3 * z_dot * running
