"""
Regressor builder models.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class XiState:
    """Open-loop integrators xi1, xi2 and the algebraic signal xi3 = -1 / (2 z^2)."""
    xi1: float = 0.0
    xi2: float = 0.0
    xi3: float = 0.0

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return {"xi1": self.xi1, "xi2": self.xi2, "xi3": self.xi3}


@dataclass(frozen=True)
class FilterBank:
    """States of the first-order filters sigma / (p + sigma) and of the swapping corrections 1 / (p + sigma).

    ``f_z`` and ``f_xi3`` start at the signals' initial values so that their
    derivatives start at zero; ``f0_z`` filters w*z from a zero state.
    """
    sigma: float
    f_z: float = 0.0
    f0_z: float = 0.0
    f_z3: float = 0.0
    f_z4: float = 0.0
    f_xi3: float = 0.0
    f_one: float = 0.0
    aux_z4_pz: float = 0.0
    aux_z3_pz: float = 0.0
    aux_z4_pxi: float = 0.0
    aux_z3_pxi: float = 0.0

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return {
            "sigma": self.sigma,
            "f_z": self.f_z,
            "f0_z": self.f0_z,
            "f_z3": self.f_z3,
            "f_z4": self.f_z4,
            "f_xi3": self.f_xi3,
            "f_one": self.f_one,
            "aux_z4_pz": self.aux_z4_pz,
            "aux_z3_pz": self.aux_z3_pz,
            "aux_z4_pxi": self.aux_z4_pxi,
            "aux_z3_pxi": self.aux_z3_pxi,
        }


@dataclass(frozen=True)
class RegressorState:
    """Integrators and filters at a common time.

    ``wind_weighted`` selects the generator-compensated construction in
    which every filter input is multiplied by the wind speed.
    """
    xi: XiState
    bank: FilterBank
    t: float = 0.0
    wind_weighted: bool = False

    def to_vector(self) -> np.ndarray:
        b = self.bank
        return np.array([
            self.xi.xi1, self.xi.xi2,
            b.f_z, b.f0_z, b.f_z3, b.f_z4, b.f_xi3, b.f_one,
            b.aux_z4_pz, b.aux_z3_pz, b.aux_z4_pxi, b.aux_z3_pxi,
        ])

    def with_vector(self, x, t: float, z: float) -> "RegressorState":
        """Rebuild from a packed vector; xi3 is recomputed from z."""
        v = [float(e) for e in x]
        return RegressorState(
            xi=XiState(xi1=v[0], xi2=v[1], xi3=-0.5 / (z * z)),
            bank=FilterBank(self.bank.sigma, *v[2:12]),
            t=t,
            wind_weighted=self.wind_weighted,
        )


@dataclass(frozen=True)
class RegressorSample:
    """Measurable pair of the regression equation y = phi * G."""
    t: float
    y: np.ndarray
    phi: np.ndarray

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return {"t": self.t, "y": self.y.tolist(), "phi": self.phi.tolist()}
