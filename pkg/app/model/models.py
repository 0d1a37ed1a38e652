"""
Model value types.

All types are immutable; the formulas in this package only read them.
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from app.model.errors import PreconditionError


@dataclass(frozen=True)
class CpFitCoefficients:
    """Curve-fit coefficients of the general power-coefficient formula."""
    kappa1: float = 0.5
    kappa2: float = 116.0
    kappa3: float = 0.4
    kappa4: float = 0.0
    kappa5: float = 5.0
    kappa6: float = 21.0
    kappa7: float = 0.035
    ell: float = 2.0
    # Pitch unit the fit was made in ("deg" for the original table).
    pitch_units: str = "deg"

    def __post_init__(self):
        # kappa4 multiplies the beta**ell term and is commonly zero.
        for name in ("kappa1", "kappa2", "kappa3", "kappa5", "kappa6", "kappa7"):
            if getattr(self, name) <= 0:
                raise PreconditionError(f"{name} must be positive")
        if self.kappa4 < 0:
            raise PreconditionError("kappa4 must be non-negative")
        if self.pitch_units not in ("deg", "rad"):
            raise PreconditionError(f"unknown pitch units: {self.pitch_units}")

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return {
            "kappa1": self.kappa1,
            "kappa2": self.kappa2,
            "kappa3": self.kappa3,
            "kappa4": self.kappa4,
            "kappa5": self.kappa5,
            "kappa6": self.kappa6,
            "kappa7": self.kappa7,
            "ell": self.ell,
            "pitch_units": self.pitch_units,
        }


@dataclass(frozen=True)
class PhysicalParams:
    """Rotor mechanics and air constants."""
    rho: float
    r: float
    J: float
    area: float
    kappa: float

    def __post_init__(self):
        for name in ("rho", "r", "J", "area", "kappa"):
            if getattr(self, name) <= 0:
                raise PreconditionError(f"{name} must be positive")
        if not math.isclose(self.kappa, 0.5 * self.rho * self.area, rel_tol=1e-12):
            raise PreconditionError("kappa must equal 0.5 * rho * area")

    @classmethod
    def build(cls, rho: float = 1.225, r: float = 1.84, J: float = 7.856, area: float = None) -> "PhysicalParams":
        """Build from primary constants; the swept area defaults to a disc of radius r."""
        if area is None:
            if r <= 0:
                raise PreconditionError("blade length must be positive")
            area = math.pi * r * r
        return cls(rho=rho, r=r, J=J, area=area, kappa=0.5 * rho * area)

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return {"rho": self.rho, "r": self.r, "J": self.J, "area": self.area, "kappa": self.kappa}


@dataclass(frozen=True)
class CpParams:
    """Parameters c of the reduced curve Cp(z) = c1 (z - c2) exp(-c3 z)."""
    c1: float
    c2: float
    c3: float

    def __post_init__(self):
        if self.c1 <= 0 or self.c2 <= 0 or self.c3 <= 0:
            raise PreconditionError(f"curve parameters must be positive: {self.as_tuple()}")

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.c1, self.c2, self.c3)

    def as_array(self) -> np.ndarray:
        return np.array(self.as_tuple())

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return {"c1": self.c1, "c2": self.c2, "c3": self.c3}


@dataclass(frozen=True)
class ThetaParams:
    """Reparameterized constants of the z-dynamics.

    With ``wind_scaled`` set the first two entries carry the factor kappa*v_w/J
    (constant-wind scenario); otherwise they carry kappa/J only.
    """
    theta1: float
    theta2: float
    theta3: float
    wind_scaled: bool = True

    def __post_init__(self):
        if self.theta1 <= 0 or self.theta2 <= 0 or self.theta3 <= 0:
            raise PreconditionError(f"theta must be positive: {self.as_tuple()}")

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.theta1, self.theta2, self.theta3)

    def as_array(self) -> np.ndarray:
        return np.array(self.as_tuple())

    @property
    def equilibrium(self) -> float:
        """Positive equilibrium of the unforced z-dynamics."""
        return self.theta2 / self.theta1

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return {
            "theta1": self.theta1,
            "theta2": self.theta2,
            "theta3": self.theta3,
            "wind_scaled": self.wind_scaled,
        }


@dataclass(frozen=True)
class EtaParams:
    """Parameters rescaled by exp(-theta3 z0) so that the regression map is monotone."""
    eta1: float
    eta2: float
    eta3: float
    z0: float

    def __post_init__(self):
        if self.eta1 <= 0 or self.eta2 <= 0 or self.eta3 <= 0:
            raise PreconditionError(f"eta must be positive: {self.as_tuple()}")

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.eta1, self.eta2, self.eta3)

    def as_array(self) -> np.ndarray:
        return np.array(self.as_tuple())

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return {"eta1": self.eta1, "eta2": self.eta2, "eta3": self.eta3, "z0": self.z0}


@dataclass(frozen=True)
class GVector:
    """Image of the parameters in the four-dimensional regression space."""
    g1: float
    g2: float
    g3: float
    g4: float

    @classmethod
    def from_array(cls, values) -> "GVector":
        g = [float(v) for v in values]
        return cls(g[0], g[1], g[2], g[3])

    def as_array(self) -> np.ndarray:
        return np.array([self.g1, self.g2, self.g3, self.g4])

    @property
    def consistency_gap(self) -> float:
        """g1*g4 - g2*g3; zero on the image of the parameter map."""
        return self.g1 * self.g4 - self.g2 * self.g3

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return {"g1": self.g1, "g2": self.g2, "g3": self.g3, "g4": self.g4}
