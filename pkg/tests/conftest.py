"""
Pytest configuration and fixtures for cp-estimator tests.
"""

from typing import Tuple

import pytest

from app.api.models import ScenarioConfig
from app.model import (
    CpParams,
    EtaParams,
    CpFitCoefficients,
    PhysicalParams,
    ThetaParams,
    c_from_kappas,
    eta_from_theta,
    theta_from_c,
)
from app.repository import RunRepository
from app.service import EstimationPipeline, RunLog, RunPlan, RunSummary, summarize

WIND = 9.0
OMEGA0 = 10.0
Z0 = WIND / OMEGA0


@pytest.fixture(scope="session")
def kappas() -> CpFitCoefficients:
    """Zero-pitch fit coefficients of the reference turbine."""
    return CpFitCoefficients()


@pytest.fixture(scope="session")
def phys() -> PhysicalParams:
    """Reference turbine: rho = 1.225, r = 1.84, J = 7.856."""
    return PhysicalParams.build()


@pytest.fixture(scope="session")
def c_true(kappas, phys) -> CpParams:
    return c_from_kappas(kappas, phys.r)


@pytest.fixture(scope="session")
def theta_true(c_true, phys) -> ThetaParams:
    return theta_from_c(c_true, phys, WIND)


@pytest.fixture(scope="session")
def eta_true(theta_true) -> EtaParams:
    return eta_from_theta(theta_true, Z0)


def _execute(plan: RunPlan) -> Tuple[RunPlan, RunLog, RunSummary]:
    log = EstimationPipeline(plan).run()
    return plan, log, summarize(plan, log)


@pytest.fixture(scope="session")
def s1_result() -> Tuple[RunPlan, RunLog, RunSummary]:
    """Noiseless off-grid run over the full default horizon."""
    return _execute(ScenarioConfig.preset("S1").to_plan())


@pytest.fixture(scope="session")
def noisy_result() -> Tuple[RunPlan, RunLog, RunSummary]:
    """Off-grid run with uniform noise of 0.3 m/s on wind and 0.5 rad/s on rotor speed."""
    return _execute(ScenarioConfig.preset("S1-noise").to_plan())


@pytest.fixture(scope="session")
def short_result() -> Tuple[RunPlan, RunLog, RunSummary]:
    """Noiseless off-grid run over 30 s for quick pipeline checks."""
    return _execute(RunPlan.default(t_final=30.0))


@pytest.fixture
def run_repo(tmp_path) -> RunRepository:
    """Repository rooted in a fresh temporary directory."""
    return RunRepository(tmp_path / "output")
