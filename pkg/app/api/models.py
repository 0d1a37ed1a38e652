"""
Pydantic models for scenario configuration files.
"""

import json
from typing import Any, Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

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
from app.service.models import RunPlan
from app.sim.models import MeasurementNoise, PlantSetup, TorqueProfile, WindProfile

SCHEMA_VERSION = 1

ScenarioName = Literal["S1", "S1-noise", "S1-smallTe", "S2", "baseline-overparam"]
SCENARIOS: Tuple[str, ...] = ("S1", "S1-noise", "S1-smallTe", "S2", "baseline-overparam")


class StrictModel(BaseModel):
    """Base model that rejects unknown keys."""
    model_config = ConfigDict(extra="forbid")


# ============================================================================
# Sections
# ============================================================================

class CurveValues(StrictModel):
    """Curve parameters given directly."""
    c1: float = Field(..., gt=0)
    c2: float = Field(..., gt=0)
    c3: float = Field(..., gt=0)

    def to_domain(self) -> CpParams:
        return CpParams(self.c1, self.c2, self.c3)


class PhysicalConfig(StrictModel):
    """Turbine and air properties."""
    rho: float = Field(default=1.225, gt=0, description="Air density (kg/m^3)")
    r: float = Field(default=1.84, gt=0, description="Blade length (m)")
    J: float = Field(default=7.856, gt=0, description="Rotor inertia (kg m^2)")
    area: Optional[float] = Field(default=None, gt=0, description="Swept area (m^2); pi r^2 when omitted")


class CurveConfig(StrictModel):
    """True power-coefficient curve: the zero-pitch fit, or c given directly."""
    kappa1: float = 0.5
    kappa2: float = 116.0
    kappa3: float = 0.4
    kappa4: float = 0.0
    kappa5: float = 5.0
    kappa6: float = 21.0
    kappa7: float = 0.035
    ell: float = 2.0
    pitch_units: Literal["deg", "rad"] = "deg"
    c: Optional[CurveValues] = None


class WindConfig(StrictModel):
    """Wind speed profile."""
    kind: Literal["constant", "piecewise", "sinusoidal"] = "constant"
    base: float = Field(default=9.0, gt=0, description="Wind speed (m/s)")
    amplitude: float = 0.0
    frequency: float = Field(default=0.0, ge=0, description="Hz")
    breakpoints: List[Tuple[float, float]] = Field(default_factory=list, description="(start time, speed) pairs")


class TorqueConfig(StrictModel):
    """Electrical torque applied to the rotor."""
    kind: Literal["zero", "s2", "constant"] = "zero"
    magnitude: float = Field(default=0.0, ge=0)


class NoiseConfig(StrictModel):
    """Uniform measurement noise amplitudes."""
    wind_amplitude: float = Field(default=0.0, ge=0, description="m/s")
    rotor_amplitude: float = Field(default=0.0, ge=0, description="rad/s")


class EstimatorConfig(StrictModel):
    """Regressor filter and estimator tuning."""
    sigma: float = Field(default=1.0, gt=0)
    gamma_w: float = Field(default=100.0, gt=0)
    f0: float = Field(default=1.0, gt=0)
    Gamma: List[float] = Field(default_factory=lambda: [50.0, 50.0, 500.0], description="Diagonal of Gamma")
    alpha: Optional[float] = Field(default=None, gt=0, description="Derived from the prior box when omitted")
    eta_floor: float = Field(default=1e-8, gt=0)
    eta0: Optional[List[float]] = None
    initial_c: Optional[CurveValues] = None
    eta0_scale: float = Field(default=0.5, gt=0)
    W0: Optional[List[float]] = None

    @field_validator("Gamma")
    @classmethod
    def _gamma_diagonal(cls, v: List[float]) -> List[float]:
        if len(v) != 3 or any(g <= 0 for g in v):
            raise ValueError("Gamma must list three positive diagonal entries")
        return v

    @field_validator("eta0")
    @classmethod
    def _eta0_shape(cls, v: Optional[List[float]]) -> Optional[List[float]]:
        if v is not None and (len(v) != 3 or any(e <= 0 for e in v)):
            raise ValueError("eta0 must list three positive entries")
        return v

    @field_validator("W0")
    @classmethod
    def _w0_shape(cls, v: Optional[List[float]]) -> Optional[List[float]]:
        if v is not None and len(v) != 4:
            raise ValueError("W0 must list four entries")
        return v


class PriorConfig(StrictModel):
    """Box of admissible curve parameters used to pick alpha."""
    c_lower: CurveValues = Field(default_factory=lambda: CurveValues(**PRIOR_LOWER.to_dict()))
    c_upper: CurveValues = Field(default_factory=lambda: CurveValues(**PRIOR_UPPER.to_dict()))
    safety: float = Field(default=2.0, gt=1.0)


class IntegrationConfig(StrictModel):
    """Fixed-step integration and recording."""
    h: float = Field(default=1e-3, gt=0, description="Step size (s)")
    t_final: float = Field(default=500.0, ge=0, description="Final time (s)")
    record_stride: float = Field(default=0.1, gt=0, description="Recording interval (s)")
    omega0: float = Field(default=10.0, gt=0, description="Initial rotor speed (rad/s)")
    omega_min: float = Field(default=1e-6, gt=0, description="Abort floor on rotor speed (rad/s)")


# ============================================================================
# Scenario
# ============================================================================

class ScenarioConfig(StrictModel):
    """Complete, versioned description of one experiment."""
    schema_version: Literal[1] = SCHEMA_VERSION
    scenario: ScenarioName = "S1"
    seed: int = Field(default=0, ge=0)
    output_dir: Optional[str] = None
    physical: PhysicalConfig = Field(default_factory=PhysicalConfig)
    curve: CurveConfig = Field(default_factory=CurveConfig)
    wind: WindConfig = Field(default_factory=WindConfig)
    torque: TorqueConfig = Field(default_factory=TorqueConfig)
    noise: NoiseConfig = Field(default_factory=NoiseConfig)
    estimator: EstimatorConfig = Field(default_factory=EstimatorConfig)
    prior: PriorConfig = Field(default_factory=PriorConfig)
    integration: IntegrationConfig = Field(default_factory=IntegrationConfig)

    @classmethod
    def preset(cls, name: str) -> "ScenarioConfig":
        """Documented defaults for a named scenario."""
        if name not in SCENARIOS:
            raise ValueError(f"unknown scenario: {name}")
        data: Dict[str, Any] = {"scenario": name}
        if name == "S1-noise":
            data["noise"] = {"wind_amplitude": 0.3, "rotor_amplitude": 0.5}
            data["seed"] = 1
        elif name == "S1-smallTe":
            data["torque"] = {"kind": "constant", "magnitude": 0.01 * PhysicalConfig().J}
        elif name == "S2":
            data["wind"] = {"kind": "sinusoidal", "base": 9.0, "amplitude": 1.0, "frequency": 0.05}
            data["torque"] = {"kind": "s2"}
        return cls.model_validate(data)

    @property
    def wind_weighted(self) -> bool:
        return self.scenario == "S2"

    def physical_params(self) -> PhysicalParams:
        p = self.physical
        return PhysicalParams.build(rho=p.rho, r=p.r, J=p.J, area=p.area)

    def true_c(self, phys: PhysicalParams) -> CpParams:
        if self.curve.c is not None:
            return self.curve.c.to_domain()
        k = self.curve.model_dump(exclude={"c"})
        return c_from_kappas(CpFitCoefficients(**k), phys.r)

    def to_plan(self, debug_checks: bool = False) -> RunPlan:
        """Resolve into the domain objects a run needs."""
        phys = self.physical_params()
        w = self.wind
        plant = PlantSetup(
            phys=phys,
            c=self.true_c(phys),
            wind=WindProfile(
                kind=w.kind,
                base=w.base,
                amplitude=w.amplitude,
                frequency=w.frequency,
                breakpoints=tuple(tuple(b) for b in w.breakpoints),
            ),
            torque=TorqueProfile(kind=self.torque.kind, magnitude=self.torque.magnitude),
            omega0=self.integration.omega0,
            h=self.integration.h,
            t_final=self.integration.t_final,
            record_stride=self.integration.record_stride,
            omega_min=self.integration.omega_min,
            wind_weighted_xi=self.wind_weighted,
        )

        est = self.estimator
        alpha = est.alpha
        if alpha is None:
            alpha = alpha_from_prior(
                self.prior.c_lower.to_domain(),
                self.prior.c_upper.to_domain(),
                phys,
                plant.z0,
                None if self.wind_weighted else w.base,
                safety=self.prior.safety,
            )
        gains = EstimatorGains(
            gamma_w=est.gamma_w,
            f0=est.f0,
            Gamma=np.diag(est.Gamma),
            alpha=alpha,
            eta_floor=est.eta_floor,
        )
        return RunPlan(
            plant=plant,
            gains=gains,
            scenario=self.scenario,
            noise=MeasurementNoise(
                wind_amplitude=self.noise.wind_amplitude,
                rotor_amplitude=self.noise.rotor_amplitude,
                seed=self.seed,
            ),
            sigma=est.sigma,
            eta0=None if est.eta0 is None else np.asarray(est.eta0),
            initial_c=None if est.initial_c is None else est.initial_c.to_domain(),
            eta0_scale=est.eta0_scale,
            W0=None if est.W0 is None else np.asarray(est.W0),
            debug_checks=debug_checks,
        )


def parse_override(expr: str) -> Tuple[List[str], Any]:
    """Split ``key.path=value``; the value is read as JSON and falls back to a plain string."""
    if "=" not in expr:
        raise ValueError(f"override must look like key.path=value: {expr!r}")
    key, raw = expr.split("=", 1)
    path = [p for p in key.strip().split(".") if p]
    if not path:
        raise ValueError(f"override has an empty key: {expr!r}")
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return path, value


def apply_overrides(config: ScenarioConfig, overrides: List[str]) -> ScenarioConfig:
    """Apply ``key.path=value`` edits and re-validate."""
    data = config.model_dump()
    for expr in overrides:
        path, value = parse_override(expr)
        node = data
        for key in path[:-1]:
            if not isinstance(node.get(key), dict):
                node[key] = {}
            node = node[key]
        node[path[-1]] = value
    return ScenarioConfig.model_validate(data)
