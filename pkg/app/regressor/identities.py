"""
Numerical checks of the identities the regressor is built on.
"""

import math
from typing import Callable, Optional

import numpy as np

from app.model import PhysicalParams, ThetaParams, disturbance_tau_d
from app.model.errors import PreconditionError
from app.sim.integrator import rk4_step
from app.sim.models import Trajectory

Signal = Callable[[float], float]


def swapping_residual(
    x: Signal,
    u: Signal,
    x_dot: Signal,
    u_dot: Signal,
    sigma: float,
    h: float,
    horizon: float,
) -> float:
    """Sup-norm gap between F[x u'] and x pF[u] - 1/(p+sigma)[x' pF[u]].

    Both sides are realized as filters from consistent initial states:
    the left filter and the correction start at zero and F[u] starts at u(0).
    """
    if sigma <= 0 or h <= 0:
        raise PreconditionError("sigma and h must be positive")

    def rhs(t: float, s: np.ndarray) -> np.ndarray:
        lhs, f_u, corr = s
        pf_u = sigma * (u(t) - f_u)
        return np.array([
            sigma * (x(t) * u_dot(t) - lhs),
            pf_u,
            -sigma * corr + x_dot(t) * pf_u,
        ])

    def gap(t: float, s: np.ndarray) -> float:
        lhs, f_u, corr = s
        return abs(lhs - (x(t) * sigma * (u(t) - f_u) - corr))

    s = np.array([0.0, u(0.0), 0.0])
    worst = gap(0.0, s)
    n_steps = int(round(horizon / h))
    for k in range(n_steps):
        t = k * h
        s = rk4_step(rhs, t, s, h)
        worst = max(worst, gap(t + h, s))
    return worst


def key_identity_residual(
    traj: Trajectory,
    theta: ThetaParams,
    phys: Optional[PhysicalParams] = None,
    wind_weighted: bool = False,
) -> float:
    """Sup-norm of the key identity evaluated along a recorded trajectory.

    With ``wind_weighted`` the generator-compensated form (right side zero)
    is checked and ``theta`` is the wind-independent parameter vector.
    Otherwise the right side is the torque disturbance tau_d, which needs
    ``phys`` whenever the electrical torque is non-zero.
    """
    if len(traj) == 0:
        return 0.0
    t1, t2, t3 = theta.as_tuple()
    z, zd = traj.z, traj.z_dot
    z3 = z ** 3
    weight = traj.v_w if wind_weighted else 1.0

    lhs = (
        math.exp(t3 * z[0]) * zd
        + t1 * t3 * traj.xi1 * zd
        + t2 * t3 * traj.xi2 * zd
        + weight * (t1 * z3 * z - t2 * z3)
    )
    if wind_weighted or not np.any(traj.Te):
        return float(np.max(np.abs(lhs)))

    if phys is None:
        raise PreconditionError("physical parameters are needed to evaluate the torque disturbance")
    tau = traj.Te / (phys.J * traj.v_w)
    return float(np.max(np.abs(lhs - disturbance_tau_d(traj.t, z, zd, tau, theta))))
