"""
Brute-force and closed-form references.

Each routine takes a different route from the implementation it checks:
grid search against the closed-form maximizer, a refined-step rerun
against the fixed-step plant, central differences against analytic
Jacobians, and cofactors against the minor expansion used for mixing.
"""

from dataclasses import replace
from typing import Callable

import numpy as np

from app.model import CpParams, cp_reduced
from app.model.errors import PreconditionError
from app.sim import PlantSetup, Trajectory, simulate


def grid_argmax_cp(c: CpParams, z_lo: float, z_hi: float, n: int) -> float:
    """Maximizer of the reduced curve over a uniform grid on [z_lo, z_hi]."""
    if n < 3:
        raise PreconditionError("the grid needs at least three points")
    if not 0 < z_lo < z_hi:
        raise PreconditionError("grid bounds must satisfy 0 < z_lo < z_hi")
    z = np.linspace(z_lo, z_hi, n)
    return float(z[np.argmax(cp_reduced(z, c))])


def ode_reference_solution(setup: PlantSetup, refinement: int = 16) -> Trajectory:
    """Plant trajectory at step h / refinement, recorded at the same times as ``setup``."""
    if refinement < 1:
        raise PreconditionError("refinement must be at least 1")
    fine = replace(setup, h=setup.h / refinement, record_stride=setup.h * setup.steps_per_record)
    return simulate(fine)


def finite_difference_jacobian(fn: Callable[[np.ndarray], np.ndarray], point, step: float = 1e-6) -> np.ndarray:
    """Central-difference Jacobian of ``fn`` at ``point`` with a relative step."""
    x = np.asarray(point, dtype=float)
    f0 = np.atleast_1d(np.asarray(fn(x), dtype=float))
    jac = np.zeros((f0.size, x.size))
    for j in range(x.size):
        dx = step * max(1.0, abs(x[j]))
        e = np.zeros_like(x)
        e[j] = dx
        jac[:, j] = (np.atleast_1d(fn(x + e)) - np.atleast_1d(fn(x - e))) / (2.0 * dx)
    return jac


def cofactor_adjugate(m) -> np.ndarray:
    """Transpose of the cofactor matrix, each cofactor from a minor determinant."""
    a = np.asarray(m, dtype=float)
    n, k = a.shape
    if n != k:
        raise PreconditionError("matrix must be square")
    cof = np.zeros_like(a)
    for i in range(n):
        for j in range(n):
            minor = np.delete(np.delete(a, i, axis=0), j, axis=1)
            cof[i, j] = (-1) ** (i + j) * np.linalg.det(minor)
    return cof.T
