"""
Experiment service implementation.
"""

import logging
import time
from typing import Optional, Sequence

import numpy as np
import pandas as pd
from scipy.stats import linregress

from app.estimator.baseline import BaselineTrace, overparam_ls_baseline
from app.model import CpParams, cp_reduced, z_star
from app.model.errors import PreconditionError
from app.regressor.excitation import ie_index
from app.regressor.models import RegressorSample
from app.repository import RunRepository
from app.service.models import ConvergenceFit, RunLog, RunPlan, RunSummary
from app.service.pipeline import EstimationPipeline, final_c_hat

logger = logging.getLogger(__name__)

ERROR_TOLERANCE = 1e-2
Z_STAR_TOLERANCE = 0.05
DELTA_SETTLE_TOLERANCE = 0.05
FIT_DELTA_FRACTION = 0.1
FIT_ERROR_FLOOR = 1e-8
CURVE_GRID = np.linspace(0.05, 0.5, 451)


def convergence_fit(log: RunLog, delta_fraction: float = FIT_DELTA_FRACTION, floor: float = FIT_ERROR_FLOOR) -> Optional[ConvergenceFit]:
    """Fit log|eta error| against t once Delta has reached ``delta_fraction`` of its final value.

    The error is normalized componentwise by the true eta; samples at or
    below ``floor`` are round-off and end the window.
    """
    if len(log) < 3:
        return None
    t = log.column("t")
    delta = log.column("delta")
    if delta[-1] <= 0:
        return None
    eta_hat = log.columns("eta_hat1", "eta_hat2", "eta_hat3")
    err = np.linalg.norm((eta_hat - log.eta_true) / log.eta_true, axis=1)

    start = int(np.argmax(delta >= delta_fraction * delta[-1]))
    below = np.nonzero(err[start:] <= floor)[0]
    stop = start + int(below[0]) if below.size else len(t)
    if stop - start < 3:
        return None

    fit = linregress(t[start:stop], np.log(err[start:stop]))
    return ConvergenceFit(
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        r_squared=float(fit.rvalue ** 2),
        t_start=float(t[start]),
        t_end=float(t[stop - 1]),
        points=stop - start,
    )


def samples_from_log(log: RunLog) -> list:
    """Regression pairs recorded along the run."""
    y = log.columns("y1", "y2")
    phi = log.columns(*(f"phi{i}{j}" for i in (1, 2) for j in (1, 2, 3, 4)))
    t = log.column("t")
    return [RegressorSample(t=t[k], y=y[k], phi=phi[k].reshape(2, 4)) for k in range(len(t))]


def baseline_from_log(log: RunLog) -> BaselineTrace:
    """The least-squares stage of a run read as the overparameterized estimator."""
    return BaselineTrace(
        t=log.column("t"),
        W_hat=log.columns("W_hat1", "W_hat2", "W_hat3", "W_hat4"),
        lambda_min=log.column("lambda_min_F"),
        lambda_max=log.column("lambda_max_F"),
    )


def baseline_frame(trace: BaselineTrace) -> pd.DataFrame:
    frame = pd.DataFrame(trace.W_hat, columns=["W_hat1", "W_hat2", "W_hat3", "W_hat4"])
    frame.insert(0, "t", trace.t)
    frame["lambda_min_F"] = trace.lambda_min
    frame["lambda_max_F"] = trace.lambda_max
    return frame


def summarize(plan: RunPlan, log: RunLog) -> RunSummary:
    """Reduce a run log to its summary and acceptance flags."""
    c_true = plan.plant.c
    summary = RunSummary(
        scenario=plan.scenario,
        seed=plan.noise.seed,
        t_final=plan.plant.t_final,
        alpha=plan.gains.alpha,
        c_true=c_true,
        c_hat_initial=log.c_hat_initial,
        z_star_true=z_star(c_true),
        aborted=log.aborted,
        abort_reason=log.abort_reason,
        abort_time=log.abort_time,
    )
    if len(log) == 0:
        return summary

    c_hat = final_c_hat(log)
    summary.c_hat = c_hat
    summary.errors = [log.last("err1"), log.last("err2"), log.last("err3")]
    summary.z_star_hat = z_star(c_hat)
    summary.z_star_error = abs(summary.z_star_hat - summary.z_star_true) / summary.z_star_true

    t = log.column("t")
    delta = log.column("delta")
    summary.delta_final = float(delta[-1])
    summary.delta_at_80pct = float(np.interp(0.8 * t[-1], t, delta))
    summary.delta_nondecreasing = bool(np.all(np.diff(delta) >= -1e-12))
    summary.delta_settled = bool(
        summary.delta_final > 0
        and abs(summary.delta_final - summary.delta_at_80pct) <= DELTA_SETTLE_TOLERANCE * summary.delta_final
    )

    lam_max = log.column("lambda_max_F")
    summary.lambda_max_initial = float(lam_max[0])
    summary.lambda_max_final = float(lam_max[-1])
    summary.lambda_min_final = log.last("lambda_min_F")

    if len(log) > 1:
        summary.ie_index = ie_index(samples_from_log(log))
    summary.nlpre_residual_max = float(np.max(log.column("nlpre_residual")))
    summary.fit = convergence_fit(log)

    summary.converged = all(e < ERROR_TOLERANCE for e in summary.errors)
    summary.biased = any(e > ERROR_TOLERANCE for e in summary.errors)
    summary.z_star_accurate = summary.z_star_error < Z_STAR_TOLERANCE
    summary.ls_stage_converged = baseline_from_log(log).converged(log.g_true)
    return summary


def emit_cp_curve(c_true: CpParams, c_hat: CpParams, grid: Sequence[float], c_initial: Optional[CpParams] = None) -> pd.DataFrame:
    """True, estimated and (optionally) initial-estimate curves on a z-grid."""
    z = np.asarray(grid, dtype=float).ravel()
    if z.size == 0 or np.any(z <= 0):
        raise PreconditionError("the curve grid must be non-empty and positive")
    frame = pd.DataFrame({
        "z": z,
        "cp_true": cp_reduced(z, c_true),
        "cp_hat": cp_reduced(z, c_hat),
    })
    if c_initial is not None:
        frame["cp_initial"] = cp_reduced(z, c_initial)
    return frame


class ExperimentService:
    """Runs scenarios and writes their artifacts."""

    def __init__(self, repo: Optional[RunRepository] = None):
        self.repo = repo

    def run(self, plan: RunPlan, run_name: Optional[str] = None, config: Optional[dict] = None) -> RunSummary:
        """Run one scenario; artifacts are written when a repository is attached.

        A numeric abort still yields a summary and the partial time series.
        """
        start = time.perf_counter()
        log = EstimationPipeline(plan).run()
        summary = summarize(plan, log)
        baseline = None
        if plan.scenario == "baseline-overparam" and len(log) > 1:
            baseline = overparam_ls_baseline(
                samples_from_log(log),
                gamma_w=plan.gains.gamma_w,
                f0=plan.gains.f0,
                W0=plan.W0,
                substeps=plan.plant.steps_per_record,
            )
            summary.ls_stage_converged = baseline.converged(log.g_true)
        summary.runtime = time.perf_counter() - start

        if self.repo is not None:
            run_dir = self.repo.create_run_dir(run_name or f"{plan.scenario}-seed{plan.noise.seed}")
            self.repo.write_json(run_dir, "config.json", config if config is not None else plan.to_dict())
            self.repo.write_csv(run_dir, "timeseries.csv", log.to_frame())
            if summary.c_hat is not None:
                curve = emit_cp_curve(plan.plant.c, summary.c_hat, CURVE_GRID, log.c_hat_initial)
                self.repo.write_csv(run_dir, "cp_curve.csv", curve)
            if baseline is not None:
                self.repo.write_csv(run_dir, "baseline_ls.csv", baseline_frame(baseline))
            summary.output_dir = str(run_dir)
            self.repo.write_json(run_dir, "summary.json", summary.to_dict())

        logger.info(
            f"{plan.scenario}: errors={summary.errors} z_star_error={summary.z_star_error} "
            f"converged={summary.converged} aborted={summary.aborted} ({summary.runtime:.1f} s)"
        )
        return summary

    def curve(self, c_true: CpParams, c_hat: CpParams, grid: Sequence[float], c_initial: Optional[CpParams] = None, run_name: str = "curve") -> pd.DataFrame:
        """Curve overlay for given parameters, written as cp_curve.csv when a repository is attached."""
        frame = emit_cp_curve(c_true, c_hat, grid, c_initial)
        if self.repo is not None:
            run_dir = self.repo.create_run_dir(run_name)
            self.repo.write_csv(run_dir, "cp_curve.csv", frame)
        return frame
