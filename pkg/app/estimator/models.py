"""
Estimator models.
"""

from dataclasses import dataclass, field

import numpy as np

from app.model.errors import PreconditionError


@dataclass(frozen=True)
class EstimatorGains:
    """Tuning of the interlaced least-squares / mixing estimator."""
    gamma_w: float = 100.0
    f0: float = 1.0
    Gamma: np.ndarray = field(default_factory=lambda: np.diag([50.0, 50.0, 500.0]))
    alpha: float = 1.0
    eta_floor: float = 1e-8

    def __post_init__(self):
        if self.gamma_w <= 0 or self.f0 <= 0:
            raise PreconditionError("gamma_w and f0 must be positive")
        if self.alpha <= 0:
            raise PreconditionError("alpha must be positive")
        if self.eta_floor <= 0:
            raise PreconditionError("the projection floor must be positive")
        gamma = np.asarray(self.Gamma, dtype=float)
        if gamma.shape != (3, 3) or not np.allclose(gamma, gamma.T):
            raise PreconditionError("Gamma must be a symmetric 3x3 matrix")
        if np.linalg.eigvalsh(gamma)[0] <= 0:
            raise PreconditionError("Gamma must be positive definite")

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return {
            "gamma_w": self.gamma_w,
            "f0": self.f0,
            "Gamma": np.asarray(self.Gamma).tolist(),
            "alpha": self.alpha,
            "eta_floor": self.eta_floor,
        }


@dataclass(frozen=True)
class EstimatorState:
    """Least-squares stage (W_hat, F) and mixing stage (eta_hat)."""
    W_hat: np.ndarray
    F: np.ndarray
    eta_hat: np.ndarray
    W0: np.ndarray
    t: float = 0.0

    @classmethod
    def initial(cls, eta0, f0: float = 1.0, W0=None) -> "EstimatorState":
        W0 = np.zeros(4) if W0 is None else np.asarray(W0, dtype=float)
        return cls(
            W_hat=W0.copy(),
            F=np.eye(4) / f0,
            eta_hat=np.asarray(eta0, dtype=float).copy(),
            W0=W0.copy(),
            t=0.0,
        )

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return {
            "W_hat": self.W_hat.tolist(),
            "F": self.F.tolist(),
            "eta_hat": self.eta_hat.tolist(),
            "W0": self.W0.tolist(),
            "t": self.t,
        }


@dataclass(frozen=True)
class MixedSample:
    """Scalar regressor Delta and mixed signal Y with Y = Delta * W(eta)."""
    delta: float
    Y: np.ndarray

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return {"delta": self.delta, "Y": self.Y.tolist()}
