"""
Plant simulation module initialization.
"""

from app.sim.models import (
    PlantState,
    WindProfile,
    TorqueProfile,
    MeasurementNoise,
    PlantSetup,
    Trajectory,
)
from app.sim.integrator import rk4_step, rk4_step_sampled
from app.sim.plant import omega_dot, z_dot, step, draw_noise, measure, simulate

__all__ = [
    "PlantState",
    "WindProfile",
    "TorqueProfile",
    "MeasurementNoise",
    "PlantSetup",
    "Trajectory",
    "rk4_step",
    "rk4_step_sampled",
    "omega_dot",
    "z_dot",
    "step",
    "draw_noise",
    "measure",
    "simulate",
]
