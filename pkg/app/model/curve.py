"""
Power-coefficient curve and turbine torque.
"""

import math

import numpy as np

from app.model.errors import PreconditionError
from app.model.models import CpParams, CpFitCoefficients, PhysicalParams


def swept_area(r: float) -> float:
    """Area swept by blades of length r (horizontal-axis disc)."""
    if r <= 0:
        raise PreconditionError(f"blade length must be positive, got {r}")
    return math.pi * r * r


def cp_general(lam: float, beta: float, k: CpFitCoefficients, beta_units: str = None) -> float:
    """General power coefficient as a function of tip-speed ratio and pitch.

    ``beta`` is interpreted in ``beta_units`` (defaults to the units of the fit)
    and converted to the fit's units before evaluation.
    """
    units = beta_units or k.pitch_units
    if units != k.pitch_units:
        beta = math.degrees(beta) if k.pitch_units == "deg" else math.radians(beta)

    base = lam + 0.08 * beta
    if base == 0:
        raise PreconditionError("lambda + 0.08*beta must be non-zero")
    inv_lambda_i = 1.0 / base - k.kappa7 / (beta ** 3 + 1.0)
    pitch_term = k.kappa4 * beta ** k.ell if k.kappa4 else 0.0
    return k.kappa1 * (k.kappa2 * inv_lambda_i - k.kappa3 * beta - pitch_term - k.kappa5) * math.exp(-k.kappa6 * inv_lambda_i)


def cp_reduced(z, c: CpParams):
    """Zero-pitch power coefficient in the speed-ratio coordinate z = v_w / omega.

    Accepts scalars or numpy arrays.
    """
    if isinstance(z, np.ndarray):
        return c.c1 * (z - c.c2) * np.exp(-c.c3 * z)
    return c.c1 * (z - c.c2) * math.exp(-c.c3 * z)


def c_from_kappas(k: CpFitCoefficients, r: float) -> CpParams:
    """Collapse the zero-pitch fit into the three curve parameters."""
    if r <= 0:
        raise PreconditionError(f"blade length must be positive, got {r}")
    return CpParams(
        c1=k.kappa1 * k.kappa2 / r * math.exp(k.kappa6 * k.kappa7),
        c2=r * (k.kappa7 + k.kappa5 / k.kappa2),
        c3=k.kappa6 / r,
    )


def z_star(c: CpParams) -> float:
    """Speed ratio at which the reduced curve peaks."""
    return (c.c2 * c.c3 + 1.0) / c.c3


def cp_max(c: CpParams) -> float:
    """Peak value of the reduced curve."""
    return c.c1 / c.c3 * math.exp(-(1.0 + c.c2 * c.c3))


def mechanical_torque(omega: float, v_w: float, c: CpParams, phys: PhysicalParams) -> float:
    """Aerodynamic torque on the rotor."""
    if omega <= 0:
        raise PreconditionError(f"rotor speed must be positive, got {omega}")
    return phys.kappa * v_w ** 3 / omega * cp_reduced(v_w / omega, c)
