"""
Coupled plant / regressor / estimator run.

Plant, filters and the least-squares stage share one fixed-step RK4 state
[omega, regressor (12), W_hat (4), F (16)]. After every step the mixed
pair (Delta, Y) is buffered; at every record instant the eta stage is
integrated across the buffered window and telemetry is logged.
"""

import logging
import math
from typing import Tuple

import numpy as np

from app.estimator import ls_drem
from app.estimator.models import EstimatorState
from app.model import (
    CpParams,
    eta_from_theta,
    g_of_theta,
    theta_from_c,
)
from app.model.errors import NumericAbortError
from app.regressor import builder
from app.service.models import RunLog, RunPlan
from app.sim.integrator import rk4_step
from app.sim.plant import draw_noise, omega_dot, z_dot

logger = logging.getLogger(__name__)

N_REG = builder.N_STATES
W_SLICE = slice(1 + N_REG, 5 + N_REG)
F_SLICE = slice(5 + N_REG, 21 + N_REG)


def initial_eta(plan: RunPlan, eta_true: np.ndarray, z0: float) -> np.ndarray:
    """eta_hat(0): explicit eta0, else mapped from initial_c, else a scaled copy of the truth."""
    if plan.eta0 is not None:
        return np.asarray(plan.eta0, dtype=float)
    if plan.initial_c is not None:
        theta = theta_from_c(plan.initial_c, plan.plant.phys, plan.recovery_wind)
        return eta_from_theta(theta, z0).as_array()
    return plan.eta0_scale * eta_true


class EstimationPipeline:
    """One estimation run; owns all of its state."""

    def __init__(self, plan: RunPlan):
        self.plan = plan
        setup = plan.plant
        self.theta_true = theta_from_c(setup.c, setup.phys, plan.recovery_wind)
        self.eta_true = eta_from_theta(self.theta_true, setup.z0).as_array()
        self.g_true = g_of_theta(self.theta_true, setup.z0).as_array()
        self._noise = (0.0, 0.0)
        self._W_start = np.zeros(4) if plan.W0 is None else np.asarray(plan.W0, dtype=float)

    def _measured(self, t: float, omega: float) -> Tuple[float, float]:
        """Measured (z, v_w) at time t under the noise held for the current step."""
        n_wind, n_rotor = self._noise
        v_meas = self.plan.plant.wind.speed(t) + n_wind
        omega_meas = omega + n_rotor
        if omega_meas <= 0 or v_meas <= 0:
            raise NumericAbortError(f"measured signals left the positive axis: v={v_meas}, omega={omega_meas}", t)
        return v_meas / omega_meas, v_meas

    def _rhs(self, t: float, x: np.ndarray) -> np.ndarray:
        plan = self.plan
        setup = plan.plant
        sigma = plan.sigma
        z_m, v_m = self._measured(t, x[0])
        w = v_m if plan.wind_weighted else 1.0
        reg = x[1:1 + N_REG]
        y, phi = builder.regressor_output(reg, z_m, sigma)
        dW, dF = ls_drem.ls_rhs(x[W_SLICE], x[F_SLICE].reshape(4, 4), y, phi, plan.gains.gamma_w)
        return np.concatenate((
            [omega_dot(t, x[0], setup.wind, setup.torque, setup.phys, setup.c)],
            builder.regressor_rhs(reg, z_m, w, sigma),
            dW,
            dF.ravel(),
        ))

    def _record(self, log: RunLog, t: float, x: np.ndarray, eta_hat: np.ndarray, delta: float, z0_meas: float):
        plan = self.plan
        setup = plan.plant
        omega = float(x[0])
        v_w = setup.wind.speed(t)
        z_m, _ = self._measured(t, omega)
        y, phi = builder.regressor_output(x[1:1 + N_REG], z_m, plan.sigma)
        W_hat = x[W_SLICE]
        F = x[F_SLICE].reshape(4, 4)
        lam_min, lam_max = ls_drem.check_spd(F, t)
        c_hat = ls_drem.c_hat(eta_hat, z0_meas, setup.phys, plan.recovery_wind)
        c_true = setup.c.as_array()
        err = np.abs(c_hat.as_array() - c_true) / c_true

        row = {
            "t": t,
            "omega": omega,
            "v_w": v_w,
            "Te": setup.torque.torque(t, omega, setup.wind, setup.phys.J),
            "z": v_w / omega,
            "z_dot": z_dot(t, omega, setup.wind, setup.torque, setup.phys, setup.c),
            "z_meas": z_m,
            "y1": y[0],
            "y2": y[1],
            "lambda_min_F": lam_min,
            "lambda_max_F": lam_max,
            "delta": delta,
            "lyapunov": ls_drem.lyapunov(eta_hat, self.eta_true, plan.gains.Gamma),
            "nlpre_residual": float(np.max(np.abs(y - phi @ self.g_true))),
            "ls_identity_gap": float(np.max(np.abs(
                (W_hat - self.g_true) - plan.gains.f0 * (F @ (self._W_start - self.g_true))
            ))),
        }
        for i in range(2):
            for j in range(4):
                row[f"phi{i + 1}{j + 1}"] = phi[i, j]
        for i in range(4):
            row[f"W_hat{i + 1}"] = W_hat[i]
        for i in range(3):
            row[f"eta_hat{i + 1}"] = eta_hat[i]
            row[f"c_hat{i + 1}"] = c_hat.as_array()[i]
            row[f"err{i + 1}"] = err[i]
        log.append(row)
        logger.debug(f"t={t:.1f} z={v_w / omega:.5f} delta={delta:.4e} err={err.tolist()}")

    def run(self) -> RunLog:
        """Integrate to the final time; a numeric abort ends the run and is recorded in the log."""
        plan = self.plan
        setup = plan.plant
        gains = plan.gains
        h = setup.h
        stride = setup.steps_per_record
        rng = plan.noise.generator()

        log = RunLog(z0=setup.z0, eta_true=self.eta_true, g_true=self.g_true)

        self._noise = draw_noise(plan.noise, rng)
        z0_meas, _ = self._measured(0.0, setup.omega0)
        reg = builder.init(z0_meas, plan.sigma, "S2" if plan.wind_weighted else "S1")
        state = EstimatorState.initial(initial_eta(plan, self.eta_true, setup.z0), gains.f0, plan.W0)
        log.c_hat_initial = ls_drem.c_hat(state.eta_hat, z0_meas, setup.phys, plan.recovery_wind)

        x = np.concatenate(([setup.omega0], reg.to_vector(), state.W_hat, state.F.ravel()))
        eta_hat = ls_drem.project(state.eta_hat, gains.eta_floor)
        mixed = ls_drem.mix(state, gains.f0, plan.debug_checks)
        deltas, ys = [mixed.delta], [mixed.Y]
        window_start = 0.0

        logger.info(f"Running {plan.scenario} for {setup.t_final} s (h={h}, alpha={gains.alpha:.4e})")
        t = 0.0
        try:
            self._record(log, t, x, eta_hat, mixed.delta, z0_meas)
            for k in range(setup.n_steps):
                if k > 0:
                    self._noise = draw_noise(plan.noise, rng)
                x = rk4_step(self._rhs, t, x, h)
                t = (k + 1) * h
                x[F_SLICE] = ls_drem.symmetrize(x[F_SLICE].reshape(4, 4)).ravel()
                if not np.all(np.isfinite(x)):
                    raise NumericAbortError("non-finite state", t)
                if not x[0] > setup.omega_min:
                    raise NumericAbortError(f"rotor speed {x[0]} fell below the floor {setup.omega_min}", t)

                state = EstimatorState(
                    W_hat=x[W_SLICE],
                    F=x[F_SLICE].reshape(4, 4),
                    eta_hat=eta_hat,
                    W0=state.W0,
                    t=t,
                )
                mixed = ls_drem.mix(state, gains.f0, plan.debug_checks)
                deltas.append(mixed.delta)
                ys.append(mixed.Y)

                if (k + 1) % stride == 0 or k + 1 == setup.n_steps:
                    eta_hat = ls_drem.integrate_eta(eta_hat, window_start, h, deltas, ys, gains)
                    deltas, ys = [mixed.delta], [mixed.Y]
                    window_start = t
                    if (k + 1) % stride == 0:
                        self._record(log, t, x, eta_hat, mixed.delta, z0_meas)
        except NumericAbortError as e:
            abort_time = e.t if e.t is not None else t
            logger.warning(f"Run {plan.scenario} aborted at t={abort_time}: {e}")
            log.aborted = True
            log.abort_reason = str(e)
            log.abort_time = abort_time

        logger.info(f"Finished {plan.scenario}: {len(log)} records")
        return log


def final_c_hat(log: RunLog) -> CpParams:
    return CpParams(log.last("c_hat1"), log.last("c_hat2"), log.last("c_hat3"))


def run_pipeline(plan: RunPlan) -> RunLog:
    """Convenience wrapper used by worker processes."""
    return EstimationPipeline(plan).run()


def disturbance_sup(log: RunLog) -> float:
    """Largest NLPRE residual along the run."""
    if len(log) == 0:
        return math.nan
    return float(np.max(log.column("nlpre_residual")))
