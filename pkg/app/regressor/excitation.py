"""
Interval-excitation check of the regressor.
"""

from typing import Sequence

import numpy as np
from scipy.linalg import eigvalsh

from app.model.errors import PreconditionError
from app.regressor.models import RegressorSample


def gram_matrix(samples: Sequence[RegressorSample]) -> np.ndarray:
    """Trapezoidal approximation of the integral of phi^T phi over the samples' span."""
    if not samples:
        raise PreconditionError("excitation window is empty")
    n = samples[0].phi.shape[1]
    gram = np.zeros((n, n))
    for prev, curr in zip(samples[:-1], samples[1:]):
        dt = curr.t - prev.t
        gram += 0.5 * dt * (prev.phi.T @ prev.phi + curr.phi.T @ curr.phi)
    return 0.5 * (gram + gram.T)


def ie_index(samples: Sequence[RegressorSample]) -> float:
    """Smallest eigenvalue of the Gram matrix; positive values certify interval excitation."""
    return float(eigvalsh(gram_matrix(samples))[0])
