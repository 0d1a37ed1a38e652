"""
Service models.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from app.estimator.models import EstimatorGains
from app.model import (
    PRIOR_LOWER,
    PRIOR_UPPER,
    CpParams,
    CpFitCoefficients,
    PhysicalParams,
    alpha_from_prior,
    c_from_kappas,
)
from app.sim.models import MeasurementNoise, PlantSetup, WindProfile

COLUMNS = [
    "t", "omega", "v_w", "Te", "z", "z_dot", "z_meas",
    "y1", "y2",
    "phi11", "phi12", "phi13", "phi14",
    "phi21", "phi22", "phi23", "phi24",
    "W_hat1", "W_hat2", "W_hat3", "W_hat4",
    "lambda_min_F", "lambda_max_F", "delta",
    "eta_hat1", "eta_hat2", "eta_hat3",
    "c_hat1", "c_hat2", "c_hat3",
    "err1", "err2", "err3",
    "lyapunov", "nlpre_residual", "ls_identity_gap",
]


@dataclass(frozen=True)
class RunPlan:
    """Fully resolved description of one estimation run."""
    plant: PlantSetup
    gains: EstimatorGains
    scenario: str = "S1"
    noise: MeasurementNoise = field(default_factory=MeasurementNoise)
    sigma: float = 1.0
    eta0: Optional[np.ndarray] = None
    initial_c: Optional[CpParams] = None
    eta0_scale: float = 0.5
    W0: Optional[np.ndarray] = None
    debug_checks: bool = False

    @property
    def wind_weighted(self) -> bool:
        return self.plant.wind_weighted_xi

    @property
    def recovery_wind(self) -> Optional[float]:
        """Wind speed used to map eta back to c; None for the wind-independent parameterization."""
        return None if self.wind_weighted else self.plant.wind.base

    @classmethod
    def default(cls, t_final: float = 500.0, **overrides) -> "RunPlan":
        """Off-grid constant-wind run at the reference turbine values."""
        phys = PhysicalParams.build()
        c = c_from_kappas(CpFitCoefficients(), phys.r)
        plant = PlantSetup(phys=phys, c=c, wind=WindProfile(base=9.0), omega0=10.0, t_final=t_final)
        alpha = alpha_from_prior(PRIOR_LOWER, PRIOR_UPPER, phys, plant.z0, plant.wind.base)
        return cls(plant=plant, gains=EstimatorGains(alpha=alpha), **overrides)

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return {
            "scenario": self.scenario,
            "plant": {
                "phys": self.plant.phys.to_dict(),
                "c": self.plant.c.to_dict(),
                "wind": self.plant.wind.to_dict(),
                "torque": self.plant.torque.to_dict(),
                "omega0": self.plant.omega0,
                "h": self.plant.h,
                "t_final": self.plant.t_final,
                "record_stride": self.plant.record_stride,
                "omega_min": self.plant.omega_min,
                "wind_weighted_xi": self.plant.wind_weighted_xi,
            },
            "gains": self.gains.to_dict(),
            "noise": self.noise.to_dict(),
            "sigma": self.sigma,
            "eta0": None if self.eta0 is None else np.asarray(self.eta0).tolist(),
            "initial_c": None if self.initial_c is None else self.initial_c.to_dict(),
            "eta0_scale": self.eta0_scale,
            "W0": None if self.W0 is None else np.asarray(self.W0).tolist(),
        }


@dataclass
class RunLog:
    """Telemetry recorded at the record stride, plus how the run ended."""
    z0: float
    eta_true: np.ndarray
    g_true: np.ndarray
    rows: List[List[float]] = field(default_factory=list)
    c_hat_initial: Optional[CpParams] = None
    aborted: bool = False
    abort_reason: Optional[str] = None
    abort_time: Optional[float] = None

    def append(self, row: Dict[str, float]) -> None:
        self.rows.append([float(row[name]) for name in COLUMNS])

    def __len__(self) -> int:
        return len(self.rows)

    def column(self, name: str) -> np.ndarray:
        i = COLUMNS.index(name)
        return np.array([r[i] for r in self.rows])

    def columns(self, *names: str) -> np.ndarray:
        """Stack columns into an (n, len(names)) array."""
        return np.column_stack([self.column(n) for n in names]) if self.rows else np.zeros((0, len(names)))

    def last(self, name: str) -> float:
        return self.rows[-1][COLUMNS.index(name)]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=COLUMNS)


@dataclass
class ConvergenceFit:
    """Straight-line fit of the log normalized parameter error."""
    slope: float
    intercept: float
    r_squared: float
    t_start: float
    t_end: float
    points: int

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "r_squared": self.r_squared,
            "t_start": self.t_start,
            "t_end": self.t_end,
            "points": self.points,
        }


@dataclass
class RunSummary:
    """Final state and acceptance flags of one run."""
    scenario: str
    seed: int
    t_final: float
    alpha: float
    c_true: CpParams
    c_hat: Optional[CpParams] = None
    c_hat_initial: Optional[CpParams] = None
    errors: List[float] = field(default_factory=list)
    delta_final: float = 0.0
    delta_at_80pct: float = 0.0
    delta_nondecreasing: bool = False
    lambda_max_initial: float = 0.0
    lambda_max_final: float = 0.0
    lambda_min_final: float = 0.0
    z_star_true: float = 0.0
    z_star_hat: Optional[float] = None
    z_star_error: Optional[float] = None
    ie_index: Optional[float] = None
    nlpre_residual_max: float = 0.0
    fit: Optional[ConvergenceFit] = None
    converged: bool = False
    biased: bool = False
    z_star_accurate: bool = False
    delta_settled: bool = False
    ls_stage_converged: bool = False
    aborted: bool = False
    abort_reason: Optional[str] = None
    abort_time: Optional[float] = None
    runtime: float = 0.0
    output_dir: Optional[str] = None

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return {
            "scenario": self.scenario,
            "seed": self.seed,
            "t_final": self.t_final,
            "alpha": self.alpha,
            "c_true": self.c_true.to_dict(),
            "c_hat": self.c_hat.to_dict() if self.c_hat else None,
            "c_hat_initial": self.c_hat_initial.to_dict() if self.c_hat_initial else None,
            "errors": self.errors,
            "delta_final": self.delta_final,
            "delta_at_80pct": self.delta_at_80pct,
            "delta_nondecreasing": self.delta_nondecreasing,
            "lambda_max_initial": self.lambda_max_initial,
            "lambda_max_final": self.lambda_max_final,
            "lambda_min_final": self.lambda_min_final,
            "z_star_true": self.z_star_true,
            "z_star_hat": self.z_star_hat,
            "z_star_error": self.z_star_error,
            "ie_index": self.ie_index,
            "nlpre_residual_max": self.nlpre_residual_max,
            "fit": self.fit.to_dict() if self.fit else None,
            "flags": {
                "converged": self.converged,
                "biased": self.biased,
                "z_star_accurate": self.z_star_accurate,
                "delta_settled": self.delta_settled,
                "ls_stage_converged": self.ls_stage_converged,
            },
            "aborted": self.aborted,
            "abort_reason": self.abort_reason,
            "abort_time": self.abort_time,
            "output_dir": self.output_dir,
        }


@dataclass
class SweepRow:
    """Outcome of one constant-torque run in the disturbance sweep."""
    te: float
    errors: List[float]
    sup_disturbance: float
    ratio: Optional[float]
    aborted: bool = False

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return {
            "te": self.te,
            "err1": self.errors[0] if self.errors else None,
            "err2": self.errors[1] if self.errors else None,
            "err3": self.errors[2] if self.errors else None,
            "sup_disturbance": self.sup_disturbance,
            "ratio": self.ratio,
            "aborted": self.aborted,
        }


@dataclass
class SweepResult:
    """Disturbance sweep table with the fitted O(Te) constant."""
    rows: List[SweepRow]
    bound_constant: Optional[float]
    ratio_spread: Optional[float]
    bounded: bool = False

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([r.to_dict() for r in self.rows])

    def to_dict(self) -> dict:
        """Convert to dictionary."""
        return {
            "rows": [r.to_dict() for r in self.rows],
            "bound_constant": self.bound_constant,
            "ratio_spread": self.ratio_spread,
            "bounded": self.bounded,
        }
