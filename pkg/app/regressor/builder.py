"""
On-line construction of the regression pair (y, phi).

Both rows come from the key identity of the z-dynamics: the first row by
filtering it directly, the second after dividing by z^3. Products of the
open-loop integrators with z' are moved through the filter with the
swapping lemma, so only measured signals enter the filters.

Initial conditions: f_z and f_xi3 start at z(0) and xi3(0), every other
state at zero. Because xi1(0) = xi2(0) = 0 this removes every decaying
initial-condition term and y = phi * G(theta) holds from t = 0.
"""

from typing import Optional, Sequence, Tuple

import numpy as np

from app.model.errors import PreconditionError
from app.regressor.models import FilterBank, RegressorSample, RegressorState, XiState
from app.sim.integrator import rk4_step_sampled

N_STATES = 12

SCENARIOS = ("S1", "S2")


def init(z0: float, sigma: float, scenario: str = "S1") -> RegressorState:
    """Regressor state at t = 0 with consistent filter initial conditions."""
    if z0 <= 0:
        raise PreconditionError(f"z(0) must be positive, got {z0}")
    if sigma <= 0:
        raise PreconditionError(f"filter bandwidth must be positive, got {sigma}")
    if scenario not in SCENARIOS:
        raise PreconditionError(f"unknown scenario: {scenario}")

    xi3 = -0.5 / (z0 * z0)
    return RegressorState(
        xi=XiState(xi1=0.0, xi2=0.0, xi3=xi3),
        bank=FilterBank(sigma=sigma, f_z=z0, f_xi3=xi3),
        t=0.0,
        wind_weighted=scenario == "S2",
    )


def regressor_rhs(x: np.ndarray, z: float, w: float, sigma: float) -> np.ndarray:
    """Time derivative of the packed regressor state for measured z and weight w."""
    xi1, xi2, f_z, f0_z, f_z3, f_z4, f_xi3, f_one, a1, a2, a3, a4 = x.tolist()
    z2 = z * z
    z3 = z2 * z
    wz3 = w * z3
    wz4 = wz3 * z
    pf_z = sigma * (z - f_z)
    pf_xi = sigma * (-0.5 / z2 - f_xi3)
    return np.array([
        -wz4,
        wz3,
        pf_z,
        sigma * (w * z - f0_z),
        sigma * (wz3 - f_z3),
        sigma * (wz4 - f_z4),
        pf_xi,
        sigma * (w - f_one),
        -sigma * a1 + wz4 * pf_z,
        -sigma * a2 + wz3 * pf_z,
        -sigma * a3 + wz4 * pf_xi,
        -sigma * a4 + wz3 * pf_xi,
    ])


def regressor_output(x: np.ndarray, z: float, sigma: float) -> Tuple[np.ndarray, np.ndarray]:
    """(y, phi) read from the packed state at the current measured z."""
    xi1, xi2, f_z, f0_z, f_z3, f_z4, f_xi3, f_one, a1, a2, a3, a4 = x.tolist()
    pf_z = sigma * (z - f_z)
    pf_xi = sigma * (-0.5 / (z * z) - f_xi3)
    y = np.array([pf_z, pf_xi])
    phi = np.array([
        [-f_z4, f_z3, -xi1 * pf_z - a1, -xi2 * pf_z + a2],
        [-f0_z, f_one, -xi1 * pf_xi - a3, -xi2 * pf_xi + a4],
    ])
    return y, phi


def advance(
    state: RegressorState,
    z_stages: Sequence[float],
    h: float,
    v_w_stages: Optional[Sequence[float]] = None,
) -> RegressorState:
    """One fixed step of all integrators and filters.

    ``z_stages`` (and ``v_w_stages`` for the wind-weighted construction)
    hold the measured signal at the step's start, midpoint and end.
    """
    if h <= 0:
        raise PreconditionError(f"step size must be positive, got {h}")
    if min(z_stages) <= 0:
        raise PreconditionError("z must stay positive")
    if state.wind_weighted:
        if v_w_stages is None:
            raise PreconditionError("the wind-weighted construction needs wind samples")
        weights = list(v_w_stages)
    else:
        weights = [1.0, 1.0, 1.0]

    sigma = state.bank.sigma
    inputs = list(zip(z_stages, weights))
    x = rk4_step_sampled(
        lambda s, u: regressor_rhs(s, u[0], u[1], sigma),
        state.to_vector(),
        h,
        inputs[0],
        inputs[1],
        inputs[2],
    )
    return state.with_vector(x, state.t + h, z_stages[2])


def emit_sample(state: RegressorState, z: float) -> RegressorSample:
    """Regression pair at the state's time for the measured z at that time."""
    y, phi = regressor_output(state.to_vector(), z, state.bank.sigma)
    return RegressorSample(t=state.t, y=y, phi=phi)
