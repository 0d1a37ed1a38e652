"""
Service module initialization.
"""

from app.service.models import RunPlan, RunLog, RunSummary, ConvergenceFit, SweepRow, SweepResult
from app.service.pipeline import EstimationPipeline, run_pipeline
from app.service.experiment_service import ExperimentService, emit_cp_curve, summarize
from app.service.sweep_service import SweepService
from app.service.verify_service import VerifyService

__all__ = [
    "RunPlan",
    "RunLog",
    "RunSummary",
    "ConvergenceFit",
    "SweepRow",
    "SweepResult",
    "EstimationPipeline",
    "run_pipeline",
    "ExperimentService",
    "emit_cp_curve",
    "summarize",
    "SweepService",
    "VerifyService",
]
