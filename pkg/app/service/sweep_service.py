"""
Small electrical-torque sweep.

The plant is driven with a constant Te while the regressor keeps assuming
Te = 0, so the NLPRE residual along each run is the torque disturbance.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from typing import List, Optional, Sequence

from app.model.errors import PreconditionError
from app.repository import RunRepository
from app.service.models import RunPlan, SweepResult, SweepRow
from app.service.pipeline import disturbance_sup, run_pipeline
from app.sim.models import TorqueProfile

logger = logging.getLogger(__name__)

DEFAULT_FRACTIONS = (0.0, 0.01, 0.02, 0.05)
# sup|d| / |Te| may vary by at most this factor across the sweep.
RATIO_SPREAD_LIMIT = 2.0


def _row(te: float, plan: RunPlan) -> SweepRow:
    log = run_pipeline(plan)
    sup_d = disturbance_sup(log)
    errors = [log.last(f"err{i}") for i in (1, 2, 3)] if len(log) else []
    ratio = sup_d / te if te > 0 else None
    return SweepRow(te=te, errors=errors, sup_disturbance=sup_d, ratio=ratio, aborted=log.aborted)


class SweepService:
    """Fans independent runs out over a process pool."""

    def __init__(self, repo: Optional[RunRepository] = None, max_workers: int = 4):
        self.repo = repo
        self.max_workers = max_workers

    def small_te_sweep(self, plan: RunPlan, te_magnitudes: Optional[Sequence[float]] = None, run_name: str = "sweep-te") -> SweepResult:
        """Final errors and sup|d| for each constant |Te|; defaults to fractions of J."""
        if te_magnitudes is None:
            te_magnitudes = [f * plan.plant.phys.J for f in DEFAULT_FRACTIONS]
        if any(te < 0 for te in te_magnitudes):
            raise PreconditionError("torque magnitudes must be non-negative")

        plans = []
        for te in te_magnitudes:
            torque = TorqueProfile(kind="constant", magnitude=te) if te > 0 else TorqueProfile()
            plans.append(replace(plan, plant=replace(plan.plant, torque=torque)))

        logger.info(f"Sweeping {len(plans)} torque levels with {self.max_workers} workers")
        if self.max_workers <= 1 or len(plans) == 1:
            rows = [_row(te, p) for te, p in zip(te_magnitudes, plans)]
        else:
            with ProcessPoolExecutor(max_workers=self.max_workers) as pool:
                rows = list(pool.map(_row, te_magnitudes, plans))

        ratios: List[float] = [r.ratio for r in rows if r.ratio is not None and not r.aborted]
        bound = max(ratios) if ratios else None
        spread = max(ratios) / min(ratios) if ratios and min(ratios) > 0 else None
        bounded = spread is not None and spread <= RATIO_SPREAD_LIMIT
        result = SweepResult(rows=rows, bound_constant=bound, ratio_spread=spread, bounded=bounded)

        if self.repo is not None:
            run_dir = self.repo.create_run_dir(run_name)
            self.repo.write_csv(run_dir, "sweep_te.csv", result.to_frame())
            self.repo.write_json(run_dir, "sweep_te.json", result.to_dict())

        logger.info(f"Sweep done: sup|d|/|Te| <= {bound} (spread {spread})")
        if not bounded:
            logger.warning(f"sup|d| / |Te| spread {spread} exceeds {RATIO_SPREAD_LIMIT}; no single O(Te) constant fits")
        return result
