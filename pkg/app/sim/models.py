"""
Plant simulation models.
"""

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from app.model import CpParams, PhysicalParams
from app.model.errors import PreconditionError


@dataclass(frozen=True)
class PlantState:
    """Rotor speed at a point in time."""
    omega: float
    t: float = 0.0

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return {"omega": self.omega, "t": self.t}


@dataclass(frozen=True)
class WindProfile:
    """Wind speed as a function of time.

    ``piecewise`` holds ``base`` until the first breakpoint and then each
    breakpoint's speed from its start time on. ``sinusoidal`` is
    base + amplitude * sin(2 pi frequency t).
    """
    kind: str = "constant"
    base: float = 9.0
    amplitude: float = 0.0
    frequency: float = 0.0
    breakpoints: Tuple[Tuple[float, float], ...] = ()

    def __post_init__(self):
        if self.kind not in ("constant", "piecewise", "sinusoidal"):
            raise PreconditionError(f"unknown wind profile: {self.kind}")
        if self.base <= 0:
            raise PreconditionError("wind speed must be positive")
        if self.kind == "sinusoidal" and abs(self.amplitude) >= self.base:
            raise PreconditionError("sinusoidal amplitude must stay below the base speed")
        if any(v <= 0 for _, v in self.breakpoints):
            raise PreconditionError("piecewise wind speeds must be positive")

    @property
    def has_derivative(self) -> bool:
        return self.kind != "piecewise"

    def speed(self, t: float) -> float:
        if self.kind == "sinusoidal":
            return self.base + self.amplitude * math.sin(2.0 * math.pi * self.frequency * t)
        if self.kind == "piecewise":
            v = self.base
            for start, value in self.breakpoints:
                if t >= start:
                    v = value
            return v
        return self.base

    def derivative(self, t: float) -> float:
        if self.kind == "sinusoidal":
            w = 2.0 * math.pi * self.frequency
            return self.amplitude * w * math.cos(w * t)
        if self.kind == "piecewise":
            raise PreconditionError("piecewise wind has no derivative")
        return 0.0

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return {
            "kind": self.kind,
            "base": self.base,
            "amplitude": self.amplitude,
            "frequency": self.frequency,
            "breakpoints": [list(b) for b in self.breakpoints],
        }


@dataclass(frozen=True)
class TorqueProfile:
    """Electrical (generator) torque."""
    kind: str = "zero"
    magnitude: float = 0.0

    def __post_init__(self):
        if self.kind not in ("zero", "s2", "constant"):
            raise PreconditionError(f"unknown torque profile: {self.kind}")

    def torque(self, t: float, omega: float, wind: WindProfile, J: float) -> float:
        if self.kind == "constant":
            return self.magnitude
        if self.kind == "s2":
            return -J * wind.derivative(t) / wind.speed(t) * omega
        return 0.0

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return {"kind": self.kind, "magnitude": self.magnitude}


@dataclass(frozen=True)
class MeasurementNoise:
    """Uniform symmetric measurement noise on the wind and rotor channels."""
    wind_amplitude: float = 0.0
    rotor_amplitude: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.wind_amplitude < 0 or self.rotor_amplitude < 0:
            raise PreconditionError("noise amplitudes must be non-negative")

    @property
    def is_zero(self) -> bool:
        return self.wind_amplitude == 0 and self.rotor_amplitude == 0

    def generator(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return {
            "wind_amplitude": self.wind_amplitude,
            "rotor_amplitude": self.rotor_amplitude,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class PlantSetup:
    """Everything the plant needs for one run."""
    phys: PhysicalParams
    c: CpParams
    wind: WindProfile = field(default_factory=WindProfile)
    torque: TorqueProfile = field(default_factory=TorqueProfile)
    omega0: float = 10.0
    h: float = 1e-3
    t_final: float = 500.0
    record_stride: Optional[float] = 0.1
    omega_min: float = 1e-6
    # Weight the xi integrators by the wind speed (generator-compensated scenario).
    wind_weighted_xi: bool = False

    def __post_init__(self):
        if self.h <= 0:
            raise PreconditionError("step size must be positive")
        if self.t_final < 0:
            raise PreconditionError("final time must be non-negative")
        if self.omega0 <= self.omega_min:
            raise PreconditionError("initial rotor speed must exceed the floor")
        if self.torque.kind == "s2" and not self.wind.has_derivative:
            raise PreconditionError("the compensating torque needs a differentiable wind profile")

    @property
    def n_steps(self) -> int:
        return int(round(self.t_final / self.h))

    @property
    def steps_per_record(self) -> int:
        if not self.record_stride:
            return 1
        return max(1, int(round(self.record_stride / self.h)))

    @property
    def z0(self) -> float:
        return self.wind.speed(0.0) / self.omega0


@dataclass
class Trajectory:
    """Sampled plant time series."""
    t: np.ndarray
    omega: np.ndarray
    v_w: np.ndarray
    Te: np.ndarray
    z: np.ndarray
    z_dot: np.ndarray
    xi1: np.ndarray
    xi2: np.ndarray

    def __len__(self) -> int:
        return len(self.t)

    @classmethod
    def empty(cls) -> "Trajectory":
        return cls(*(np.zeros(0) for _ in range(8)))

    def to_dict(self) -> dict:
        """Convert to dictionary of lists."""
        return {
            "t": self.t.tolist(),
            "omega": self.omega.tolist(),
            "v_w": self.v_w.tolist(),
            "Te": self.Te.tolist(),
            "z": self.z.tolist(),
            "z_dot": self.z_dot.tolist(),
            "xi1": self.xi1.tolist(),
            "xi2": self.xi2.tolist(),
        }
