"""
Registry of oracle checks run by ``verify``.

A check returns ``(residual, tolerance, metadata)``; the runner times it
and turns it into an OracleReport. Checks that raise are reported as
failures with the exception message.
"""

import logging
import math
import time
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np

from app.estimator import ls_drem
from app.estimator.models import EstimatorGains
from app.model import (
    PRIOR_LOWER,
    PRIOR_UPPER,
    CpParams,
    CpFitCoefficients,
    PhysicalParams,
    alpha_lower_bound,
    c_from_kappas,
    c_from_theta,
    cp_general,
    cp_reduced,
    eta_from_theta,
    monotonicity_margin,
    theta_from_c,
    theta_from_eta,
    w_jacobian,
    w_of_eta,
    z_star,
)
from app.oracles.models import OracleReport
from app.oracles.oracles import (
    cofactor_adjugate,
    finite_difference_jacobian,
    grid_argmax_cp,
    ode_reference_solution,
)
from app.regressor.identities import key_identity_residual, swapping_residual
from app.sim import PlantSetup, TorqueProfile, WindProfile, simulate

logger = logging.getLogger(__name__)

CheckResult = Tuple[float, float, dict]
Check = Callable[[], CheckResult]

_CHECKS: Dict[str, Check] = {}

TABLE_C = (65.74, 0.144, 11.41)
WIND = 9.0
OMEGA0 = 10.0
SEED = 20240611


def check(name: str):
    """Register a check under ``name``."""
    def decorator(fn: Check) -> Check:
        _CHECKS[name] = fn
        return fn
    return decorator


def check_names() -> List[str]:
    return list(_CHECKS)


def _table_setup() -> Tuple[PhysicalParams, CpParams]:
    phys = PhysicalParams.build()
    return phys, c_from_kappas(CpFitCoefficients(), phys.r)


def _random_prior_c(rng: np.random.Generator) -> CpParams:
    lo, hi = PRIOR_LOWER.as_array(), PRIOR_UPPER.as_array()
    return CpParams(*rng.uniform(lo, hi))


@check("curve_constants")
def _curve_constants() -> CheckResult:
    _, c = _table_setup()
    rel = [abs(a - b) / b for a, b in zip(c.as_tuple(), TABLE_C)]
    return max(rel), 5e-3, {"c": c.to_dict()}


@check("z_star_grid_search")
def _z_star_grid_search() -> CheckResult:
    _, c = _table_setup()
    n = 100_000
    z_lo, z_hi = 1e-5, 1.0
    grid = grid_argmax_cp(c, z_lo, z_hi, n)
    return abs(grid - z_star(c)), (z_hi - z_lo) / (n - 1), {"grid_points": n, "z_star": z_star(c)}


@check("cp_general_vs_reduced")
def _cp_general_vs_reduced() -> CheckResult:
    phys, c = _table_setup()
    k = CpFitCoefficients()
    z = np.linspace(0.05, 1.0, 200)
    gap = max(abs(cp_general(phys.r / zi, 0.0, k) - cp_reduced(float(zi), c)) for zi in z)
    return gap, 1e-12, {"grid_points": len(z)}


@check("parameter_roundtrip")
def _parameter_roundtrip() -> CheckResult:
    phys, _ = _table_setup()
    rng = np.random.default_rng(SEED)
    z0 = WIND / OMEGA0
    worst = 0.0
    for _ in range(100):
        c = _random_prior_c(rng)
        for v_w in (WIND, None):
            eta = eta_from_theta(theta_from_c(c, phys, v_w), z0)
            back = c_from_theta(theta_from_eta(eta, wind_scaled=v_w is not None), phys, v_w)
            worst = max(worst, float(np.max(np.abs(back.as_array() - c.as_array()) / c.as_array())))
    return worst, 1e-12, {"samples": 100, "seed": SEED}


@check("w_jacobian_finite_difference")
def _w_jacobian_fd() -> CheckResult:
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(50):
        eta = rng.uniform([1e-3, 1e-3, 5.0], [5e-2, 5e-3, 15.0])
        numeric = finite_difference_jacobian(lambda e: w_of_eta(e).as_array(), eta)
        worst = max(worst, float(np.max(np.abs(numeric - w_jacobian(eta)))))
    return worst, 1e-6, {"samples": 50, "seed": SEED}


@check("eta_jacobian_finite_difference")
def _eta_jacobian_fd() -> CheckResult:
    rng = np.random.default_rng(SEED)
    gains = EstimatorGains(alpha=2.0e4)
    worst = 0.0
    for _ in range(50):
        eta = rng.uniform([1e-3, 1e-3, 5.0], [5e-2, 5e-3, 15.0])
        delta = float(rng.uniform(0.1, 1.0))
        Y = rng.normal(size=4) * 1e-2
        numeric = finite_difference_jacobian(lambda e: ls_drem.eta_rhs(e, delta, Y, gains), eta)
        analytic = ls_drem.eta_jacobian(eta, delta, gains)
        worst = max(worst, float(np.max(np.abs(numeric - analytic)) / max(1.0, np.max(np.abs(analytic)))))
    return worst, 1e-6, {"samples": 50, "seed": SEED}


@check("monotonicity_above_bound")
def _monotonicity_above_bound() -> CheckResult:
    phys, _ = _table_setup()
    rng = np.random.default_rng(SEED)
    z0 = WIND / OMEGA0
    failures = 0
    smallest = math.inf
    for _ in range(1000):
        eta = eta_from_theta(theta_from_c(_random_prior_c(rng), phys, WIND), z0)
        margin = monotonicity_margin(eta, 2.0 * alpha_lower_bound(eta))
        smallest = min(smallest, margin)
        failures += margin <= 0
    return float(failures), 0.0, {"samples": 1000, "smallest_margin": smallest, "seed": SEED}


@check("monotonicity_at_bound")
def _monotonicity_at_bound() -> CheckResult:
    phys, _ = _table_setup()
    rng = np.random.default_rng(SEED)
    z0 = WIND / OMEGA0
    largest = -math.inf
    for _ in range(1000):
        eta = eta_from_theta(theta_from_c(_random_prior_c(rng), phys, WIND), z0)
        largest = max(largest, monotonicity_margin(eta, alpha_lower_bound(eta)))
    return max(largest, 0.0), 1e-9, {"samples": 1000, "largest_margin": largest, "seed": SEED}


@check("adjugate_cofactor_agreement")
def _adjugate_cofactor_agreement() -> CheckResult:
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(200):
        q, _ = np.linalg.qr(rng.normal(size=(4, 4)))
        F = q @ np.diag(rng.uniform(1e-3, 1.0, size=4)) @ q.T
        m = np.eye(4) - F
        _, adj = ls_drem.det_and_adjugate(m)
        worst = max(worst, float(np.max(np.abs(adj - cofactor_adjugate(m)))))
    return worst, 1e-12, {"samples": 200, "seed": SEED}


@check("adjugate_identity")
def _adjugate_identity() -> CheckResult:
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(200):
        m = rng.normal(size=(4, 4))
        det, adj = ls_drem.det_and_adjugate(m)
        worst = max(worst, ls_drem.adjugate_gap(m, det, adj))
    return worst, 1e-10, {"samples": 200, "seed": SEED}


@check("plant_step_refinement")
def _plant_step_refinement() -> CheckResult:
    phys, c = _table_setup()
    setup = PlantSetup(phys=phys, c=c, wind=WindProfile(base=WIND), omega0=OMEGA0, h=1e-2, t_final=50.0, record_stride=1.0)
    coarse = simulate(setup)
    fine = ode_reference_solution(setup, refinement=16)
    return float(np.max(np.abs(coarse.z - fine.z))), 1e-8, {"h": setup.h, "refinement": 16, "t_final": setup.t_final}


@check("swapping_lemma")
def _swapping_lemma() -> CheckResult:
    residual = swapping_residual(
        x=lambda t: t,
        u=math.sin,
        x_dot=lambda t: 1.0,
        u_dot=math.cos,
        sigma=1.0,
        h=1e-3,
        horizon=10.0,
    )
    return residual, 1e-5, {"sigma": 1.0, "h": 1e-3, "horizon": 10.0}


@check("key_identity_off_grid")
def _key_identity_off_grid() -> CheckResult:
    phys, c = _table_setup()
    setup = PlantSetup(phys=phys, c=c, wind=WindProfile(base=WIND), omega0=OMEGA0, h=1e-3, t_final=50.0)
    traj = simulate(setup)
    residual = key_identity_residual(traj, theta_from_c(c, phys, WIND))
    return residual, 1e-8, {"t_final": setup.t_final}


@check("key_identity_compensated")
def _key_identity_compensated() -> CheckResult:
    phys, c = _table_setup()
    setup = PlantSetup(
        phys=phys,
        c=c,
        wind=WindProfile(kind="sinusoidal", base=WIND, amplitude=1.0, frequency=0.05),
        torque=TorqueProfile(kind="s2"),
        omega0=OMEGA0,
        h=1e-3,
        t_final=50.0,
        wind_weighted_xi=True,
    )
    traj = simulate(setup)
    residual = key_identity_residual(traj, theta_from_c(c, phys, None), wind_weighted=True)
    return residual, 1e-8, {"t_final": setup.t_final}


def run_checks(names: Optional[Iterable[str]] = None) -> List[OracleReport]:
    """Run the named checks (all when ``names`` is None) and report each with its runtime."""
    selected = list(_CHECKS) if names is None else list(names)
    unknown = [n for n in selected if n not in _CHECKS]
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(unknown)}")

    reports = []
    for name in selected:
        start = time.perf_counter()
        try:
            residual, tolerance, metadata = _CHECKS[name]()
            report = OracleReport(name=name, residual=float(residual), tolerance=tolerance, metadata=metadata)
        except Exception as e:
            logger.warning(f"Check {name} raised: {e}")
            report = OracleReport(name=name, residual=math.inf, tolerance=0.0, error=str(e))
        report.runtime = time.perf_counter() - start
        if not report.passed:
            logger.warning(f"Check {name} failed: residual {report.residual:.3e} > tolerance {report.tolerance:.3e}")
        reports.append(report)
    return reports
