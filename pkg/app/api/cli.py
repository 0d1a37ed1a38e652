"""
Command-line surface: run, curve, sweep-te, verify, print-defaults.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

import numpy as np

from app.api.errors import EXIT_OK, VerificationFailed, exit_code_for
from app.api.models import SCENARIOS, ScenarioConfig, apply_overrides
from app.config import Config, config_from_env
from app.model import CpParams
from app.model.errors import NumericAbortError
from app.repository import RunRepository
from app.service import ExperimentService, SweepService, VerifyService
from app.service.sweep_service import DEFAULT_FRACTIONS

logger = logging.getLogger(__name__)


def _c_values(text: str) -> CpParams:
    parts = [float(p) for p in text.split(",")]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected c1,c2,c3")
    return CpParams(*parts)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cp-estimator",
        description="On-line estimation of the power-coefficient curve of a wind turbine.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def scenario_args(p: argparse.ArgumentParser):
        p.add_argument("--scenario", choices=SCENARIOS, default="S1", help="Preset to start from")
        p.add_argument("--config", help="JSON scenario file (replaces the preset)")
        p.add_argument("--override", action="append", default=[], metavar="KEY=VALUE",
                       help="Edit one field, e.g. integration.t_final=100 (repeatable)")
        p.add_argument("--seed", type=int, help="Noise seed")
        p.add_argument("--out", help="Output root directory")

    p_run = sub.add_parser("run", help="Run one scenario")
    scenario_args(p_run)

    p_curve = sub.add_parser("curve", help="Write the true/estimated curve overlay")
    scenario_args(p_curve)
    p_curve.add_argument("--c-hat", type=_c_values, required=True, help="Estimated c1,c2,c3")
    p_curve.add_argument("--c-initial", type=_c_values, help="Initial-estimate c1,c2,c3")
    p_curve.add_argument("--z-min", type=float, default=0.05)
    p_curve.add_argument("--z-max", type=float, default=0.5)
    p_curve.add_argument("--points", type=int, default=451)

    p_sweep = sub.add_parser("sweep-te", help="Small constant electrical torque sweep")
    scenario_args(p_sweep)
    p_sweep.add_argument("--fractions", type=float, nargs="+", default=list(DEFAULT_FRACTIONS),
                         help="Torque magnitudes as fractions of J")
    p_sweep.add_argument("--workers", type=int, help="Process-pool size")

    p_verify = sub.add_parser("verify", help="Run every oracle check and invariant")
    p_verify.add_argument("--out", help="Output root directory")

    p_defaults = sub.add_parser("print-defaults", help="Print the resolved config of a preset")
    p_defaults.add_argument("--scenario", choices=SCENARIOS, default="S1")
    p_defaults.add_argument("--override", action="append", default=[], metavar="KEY=VALUE")

    return parser


def load_scenario(args: argparse.Namespace, repo: Optional[RunRepository] = None) -> ScenarioConfig:
    """Preset or config file, then --seed and --override edits."""
    if getattr(args, "config", None):
        data = (repo or RunRepository(".")).read_json(args.config)
        config = ScenarioConfig.model_validate(data)
    else:
        config = ScenarioConfig.preset(args.scenario)
    overrides = list(args.override)
    if getattr(args, "seed", None) is not None:
        overrides.append(f"seed={args.seed}")
    return apply_overrides(config, overrides) if overrides else config


def _cmd_run(args: argparse.Namespace, settings: Config, repo: RunRepository) -> int:
    config = load_scenario(args, repo)
    service = ExperimentService(repo)
    summary = service.run(
        config.to_plan(settings.debug_checks),
        run_name=config.output_dir,
        config=config.model_dump(mode="json"),
    )
    print(json.dumps(summary.to_dict(), indent=2, sort_keys=True))
    if summary.aborted:
        raise NumericAbortError(summary.abort_reason or "run aborted", summary.abort_time)
    return EXIT_OK


def _cmd_curve(args: argparse.Namespace, settings: Config, repo: RunRepository) -> int:
    config = load_scenario(args, repo)
    phys = config.physical_params()
    grid = np.linspace(args.z_min, args.z_max, args.points)
    ExperimentService(repo).curve(config.true_c(phys), args.c_hat, grid, args.c_initial, run_name=config.output_dir or "curve")
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace, settings: Config, repo: RunRepository) -> int:
    config = load_scenario(args, repo)
    plan = config.to_plan(settings.debug_checks)
    service = SweepService(repo, max_workers=args.workers or settings.max_workers)
    magnitudes = [f * plan.plant.phys.J for f in args.fractions]
    result = service.small_te_sweep(plan, magnitudes, run_name=config.output_dir or "sweep-te")
    print(json.dumps(result.to_dict(), indent=2, sort_keys=True))
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace, settings: Config, repo: RunRepository) -> int:
    reports = VerifyService(repo).verify()
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.name:32s} residual={r.residual:.3e} tol={r.tolerance:.1e} ({r.runtime:.2f} s)")
    failed = [r.name for r in reports if not r.passed]
    if failed:
        raise VerificationFailed(failed)
    return EXIT_OK


def _cmd_print_defaults(args: argparse.Namespace, settings: Config, repo: RunRepository) -> int:
    config = ScenarioConfig.preset(args.scenario)
    if args.override:
        config = apply_overrides(config, args.override)
    print(json.dumps(config.model_dump(mode="json"), indent=2))
    return EXIT_OK


COMMANDS = {
    "run": _cmd_run,
    "curve": _cmd_curve,
    "sweep-te": _cmd_sweep,
    "verify": _cmd_verify,
    "print-defaults": _cmd_print_defaults,
}


def main(argv: Optional[List[str]] = None, settings: Optional[Config] = None) -> int:
    """Parse arguments, dispatch, and map failures to exit codes."""
    args = build_parser().parse_args(argv)
    settings = settings or config_from_env()
    repo = RunRepository(getattr(args, "out", None) or settings.output_root)
    try:
        return COMMANDS[args.command](args, settings, repo)
    except Exception as e:
        code = exit_code_for(e)
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return code
