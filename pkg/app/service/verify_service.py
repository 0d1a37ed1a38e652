"""
Verification service: oracle checks plus invariants along a short run.
"""

import logging
import math
import time
from typing import Callable, List, Optional, Tuple

import numpy as np

from app.oracles import OracleReport, run_checks
from app.repository import RunRepository
from app.service.models import RunLog, RunPlan
from app.service.pipeline import EstimationPipeline

logger = logging.getLogger(__name__)

INVARIANT_HORIZON = 60.0


def _nlpre_exactness(plan: RunPlan, log: RunLog) -> Tuple[float, float]:
    return float(np.max(log.column("nlpre_residual"))), 1e-6


def _delta_monotone(plan: RunPlan, log: RunLog) -> Tuple[float, float]:
    drops = -np.diff(log.column("delta"))
    return max(float(np.max(drops)), 0.0), 1e-12


def _extended_nlpre(plan: RunPlan, log: RunLog) -> Tuple[float, float]:
    """W_hat(t) - W = f0 F(t) (W_hat(0) - W)."""
    return float(np.max(log.column("ls_identity_gap"))), 1e-6


def _lyapunov_nonincreasing(plan: RunPlan, log: RunLog) -> Tuple[float, float]:
    u = log.column("lyapunov")
    return max(float(np.max(np.diff(u))) / u[0], 0.0), 1e-9


def _information_spd(plan: RunPlan, log: RunLog) -> Tuple[float, float]:
    return max(-float(np.min(log.column("lambda_min_F"))), 0.0), 0.0


INVARIANTS: List[Tuple[str, Callable[[RunPlan, RunLog], Tuple[float, float]]]] = [
    ("nlpre_exactness", _nlpre_exactness),
    ("delta_nondecreasing", _delta_monotone),
    ("extended_nlpre_identity", _extended_nlpre),
    ("lyapunov_nonincreasing", _lyapunov_nonincreasing),
    ("information_matrix_spd", _information_spd),
]


class VerifyService:
    """Runs every oracle check and the run invariants, and writes verify_report.json."""

    def __init__(self, repo: Optional[RunRepository] = None, horizon: float = INVARIANT_HORIZON):
        self.repo = repo
        self.horizon = horizon

    def invariant_reports(self, plan: Optional[RunPlan] = None) -> List[OracleReport]:
        plan = plan or RunPlan.default(t_final=self.horizon)
        start = time.perf_counter()
        log = EstimationPipeline(plan).run()
        run_time = time.perf_counter() - start

        reports = []
        for name, fn in INVARIANTS:
            t0 = time.perf_counter()
            if log.aborted or len(log) < 2:
                report = OracleReport(name=name, residual=math.inf, tolerance=0.0, error=log.abort_reason or "empty run")
            else:
                residual, tolerance = fn(plan, log)
                report = OracleReport(
                    name=name,
                    residual=residual,
                    tolerance=tolerance,
                    metadata={"t_final": plan.plant.t_final, "scenario": plan.scenario},
                )
            report.runtime = time.perf_counter() - t0 + run_time / len(INVARIANTS)
            if not report.passed:
                logger.warning(f"Invariant {name} failed: residual {report.residual:.3e}")
            reports.append(report)
        return reports

    def verify(self, plan: Optional[RunPlan] = None) -> List[OracleReport]:
        """All checks; the caller decides the exit status from the pass flags."""
        reports = run_checks() + self.invariant_reports(plan)
        passed = sum(r.passed for r in reports)
        logger.info(f"Verification: {passed}/{len(reports)} checks passed")
        if self.repo is not None:
            run_dir = self.repo.create_run_dir("verify")
            self.repo.write_json(run_dir, "verify_report.json", {
                "passed": passed == len(reports),
                "checks": [r.to_dict() for r in reports],
            })
        return reports
