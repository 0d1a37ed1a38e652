"""
Least-squares stage alone, treating G(theta) as a free 4-vector.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from app.estimator.ls_drem import check_spd, ls_update
from app.estimator.models import EstimatorState
from app.model.errors import PreconditionError
from app.regressor.models import RegressorSample

logger = logging.getLogger(__name__)

MAX_INNER_STEP = 1e-3


@dataclass(frozen=True)
class BaselineTrace:
    """Per-sample history of the overparameterized least-squares estimate."""
    t: np.ndarray
    W_hat: np.ndarray
    lambda_min: np.ndarray
    lambda_max: np.ndarray

    def final_error(self, target: np.ndarray) -> float:
        return float(np.linalg.norm(self.W_hat[-1] - target))

    def initial_error(self, target: np.ndarray) -> float:
        return float(np.linalg.norm(self.W_hat[0] - target))

    def converged(self, target: np.ndarray, lambda_ratio: float = 0.1, error_ratio: float = 0.5) -> bool:
        """True when lambda_max(F) shrank below ``lambda_ratio`` of its start and the estimate error below ``error_ratio`` of its start."""
        info_shrunk = self.lambda_max[-1] <= lambda_ratio * self.lambda_max[0]
        error_shrunk = self.final_error(target) < error_ratio * self.initial_error(target)
        return bool(info_shrunk and error_shrunk)

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return {
            "t": self.t.tolist(),
            "W_hat": self.W_hat.tolist(),
            "lambda_min": self.lambda_min.tolist(),
            "lambda_max": self.lambda_max.tolist(),
        }


def overparam_ls_baseline(
    samples: Sequence[RegressorSample],
    gamma_w: float = 100.0,
    f0: float = 1.0,
    W0: Optional[np.ndarray] = None,
    substeps: Optional[int] = None,
    max_step: float = MAX_INNER_STEP,
) -> BaselineTrace:
    """Run only the least-squares stage over a sample stream.

    Each sample is held until the next one. ``substeps`` splits every
    interval into that many fixed steps; when omitted, each interval gets
    the fewest steps no longer than ``max_step``.
    """
    if len(samples) == 0:
        raise PreconditionError("the sample stream is empty")
    if substeps is not None and substeps < 1:
        raise PreconditionError("substeps must be at least 1")
    if max_step <= 0:
        raise PreconditionError(f"max_step must be positive, got {max_step}")

    state = EstimatorState.initial(eta0=np.ones(3), f0=f0, W0=W0)
    state = EstimatorState(W_hat=state.W_hat, F=state.F, eta_hat=state.eta_hat, W0=state.W0, t=samples[0].t)

    ts = [samples[0].t]
    ws = [state.W_hat.copy()]
    lo, hi = check_spd(state.F, state.t)
    lmin, lmax = [lo], [hi]

    for current, following in zip(samples[:-1], samples[1:]):
        dt = following.t - current.t
        if dt <= 0:
            raise PreconditionError("sample times must be strictly increasing")
        n = substeps or max(1, math.ceil(dt / max_step - 1e-9))
        h = dt / n
        for _ in range(n):
            state = ls_update(state, current, gamma_w, h)
        lo, hi = check_spd(state.F, state.t)
        ts.append(following.t)
        ws.append(state.W_hat.copy())
        lmin.append(lo)
        lmax.append(hi)

    logger.debug(f"Baseline LS over {len(samples)} samples: lambda_max {lmax[0]:.3e} -> {lmax[-1]:.3e}")
    return BaselineTrace(
        t=np.asarray(ts),
        W_hat=np.asarray(ws),
        lambda_min=np.asarray(lmin),
        lambda_max=np.asarray(lmax),
    )
