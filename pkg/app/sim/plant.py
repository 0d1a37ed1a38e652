"""
One-mass rotor model J * omega' = Tm - Te.
"""

import logging
from typing import Tuple

import numpy as np

from app.model import CpParams, PhysicalParams, mechanical_torque
from app.model.errors import NumericAbortError, PreconditionError
from app.sim.integrator import rk4_step
from app.sim.models import MeasurementNoise, PlantSetup, PlantState, TorqueProfile, Trajectory, WindProfile

logger = logging.getLogger(__name__)

DEFAULT_OMEGA_MIN = 1e-6


def omega_dot(
    t: float,
    omega: float,
    wind: WindProfile,
    torque: TorqueProfile,
    phys: PhysicalParams,
    c: CpParams,
) -> float:
    """Rotor acceleration."""
    if omega <= 0:
        raise NumericAbortError(f"rotor speed left the positive axis: {omega}", t)
    v_w = wind.speed(t)
    return (mechanical_torque(omega, v_w, c, phys) - torque.torque(t, omega, wind, phys.J)) / phys.J


def z_dot(t: float, omega: float, wind: WindProfile, torque: TorqueProfile, phys: PhysicalParams, c: CpParams) -> float:
    """Time derivative of z = v_w / omega taken from the vector field."""
    v_w = wind.speed(t)
    v_dot = wind.derivative(t) if wind.has_derivative else 0.0
    return v_dot / omega - v_w * omega_dot(t, omega, wind, torque, phys, c) / (omega * omega)


def step(
    state: PlantState,
    wind: WindProfile,
    torque: TorqueProfile,
    phys: PhysicalParams,
    c: CpParams,
    h: float,
    omega_min: float = DEFAULT_OMEGA_MIN,
) -> PlantState:
    """Advance the rotor by one fixed step."""
    if h <= 0:
        raise PreconditionError(f"step size must be positive, got {h}")
    if state.omega <= 0:
        raise PreconditionError(f"rotor speed must be positive, got {state.omega}")

    omega = rk4_step(lambda t, w: omega_dot(t, w, wind, torque, phys, c), state.t, state.omega, h)
    t = state.t + h
    if not omega > omega_min:
        raise NumericAbortError(f"rotor speed {omega} fell below the floor {omega_min}", t)
    return PlantState(omega=omega, t=t)


def draw_noise(noise: MeasurementNoise, rng: np.random.Generator) -> Tuple[float, float]:
    """(wind, rotor) noise sample.

    The wind channel is drawn before the rotor channel so seeded runs replay exactly.
    """
    if noise.is_zero:
        return 0.0, 0.0
    n_wind = rng.uniform(-noise.wind_amplitude, noise.wind_amplitude)
    n_rotor = rng.uniform(-noise.rotor_amplitude, noise.rotor_amplitude)
    return n_wind, n_rotor


def measure(
    state: PlantState,
    wind: WindProfile,
    noise: MeasurementNoise,
    rng: np.random.Generator,
) -> Tuple[float, float]:
    """Measured (omega, v_w): truth plus independent uniform draws."""
    n_wind, n_rotor = draw_noise(noise, rng)
    return state.omega + n_rotor, wind.speed(state.t) + n_wind


def simulate(setup: PlantSetup) -> Trajectory:
    """Integrate the rotor together with the xi integrators and record at the configured stride."""
    n_steps = setup.n_steps
    if n_steps == 0:
        return Trajectory.empty()

    wind, torque, phys, c = setup.wind, setup.torque, setup.phys, setup.c
    weighted = setup.wind_weighted_xi

    def rhs(t: float, x: np.ndarray) -> np.ndarray:
        omega = x[0]
        z = wind.speed(t) / omega
        w = wind.speed(t) if weighted else 1.0
        z3 = z * z * z
        return np.array([
            omega_dot(t, omega, wind, torque, phys, c),
            -w * z3 * z,
            w * z3,
        ])

    stride = setup.steps_per_record
    rows = []

    def record(t: float, x: np.ndarray):
        omega = float(x[0])
        v_w = wind.speed(t)
        rows.append((
            t,
            omega,
            v_w,
            torque.torque(t, omega, wind, phys.J),
            v_w / omega,
            z_dot(t, omega, wind, torque, phys, c),
            float(x[1]),
            float(x[2]),
        ))

    logger.debug(f"Simulating plant for {setup.t_final} s with h={setup.h}")
    x = np.array([setup.omega0, 0.0, 0.0])
    record(0.0, x)
    for k in range(n_steps):
        t = k * setup.h
        x = rk4_step(rhs, t, x, setup.h)
        t_next = (k + 1) * setup.h
        if not x[0] > setup.omega_min:
            raise NumericAbortError(f"rotor speed {x[0]} fell below the floor {setup.omega_min}", t_next)
        if (k + 1) % stride == 0:
            record(t_next, x)

    data = np.array(rows)
    return Trajectory(*(data[:, i].copy() for i in range(8)))
