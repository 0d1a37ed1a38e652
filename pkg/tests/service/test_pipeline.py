"""
Tests for the coupled estimation pipeline.
"""

import math
from dataclasses import replace

import numpy as np
import pytest

from app.estimator import c_hat
from app.model import CpParams
from app.service import EstimationPipeline, RunLog, RunPlan
from app.service.models import COLUMNS
from app.service.pipeline import disturbance_sup, final_c_hat, initial_eta
from app.sim import TorqueProfile

pytestmark = [pytest.mark.integration, pytest.mark.service]


def test_records_every_stride(short_result):
    """Test one row per 0.1 s including t = 0."""
    plan, log, _ = short_result
    assert not log.aborted
    assert len(log) == 301
    t = log.column("t")
    assert t[0] == 0.0
    assert t[-1] == pytest.approx(plan.plant.t_final)
    assert list(log.to_frame().columns) == COLUMNS


def test_delta_starts_at_zero_and_grows(short_result):
    """Test Delta(0) = 0 and Delta never decreases."""
    _, log, _ = short_result
    delta = log.column("delta")
    assert delta[0] == 0.0
    assert np.all(np.diff(delta) >= -1e-12)
    assert delta[-1] > 0


def test_regression_equation_exact(short_result):
    """Test y = phi G(theta) along the noiseless run."""
    _, log, _ = short_result
    assert np.max(log.column("nlpre_residual")) < 1e-6
    assert np.max(log.column("ls_identity_gap")) < 1e-6


def test_information_matrix_stays_positive(short_result):
    """Test lambda_min(F) > 0 and lambda_max(F) shrinks from 1."""
    _, log, _ = short_result
    assert np.all(log.column("lambda_min_F") > 0)
    lam_max = log.column("lambda_max_F")
    assert lam_max[0] == pytest.approx(1.0)
    assert lam_max[-1] <= lam_max[0]


def test_lyapunov_never_increases(short_result):
    """Test the parameter-error Lyapunov function is non-increasing."""
    _, log, _ = short_result
    u = log.column("lyapunov")
    assert np.max(np.diff(u)) <= 1e-9 * u[0]


def test_initial_estimate_is_half_truth(short_result, phys):
    """Test the default eta_hat(0) and its recovered curve."""
    plan, log, _ = short_result
    np.testing.assert_allclose(log.columns("eta_hat1", "eta_hat2", "eta_hat3")[0], 0.5 * log.eta_true)
    expected = c_hat(0.5 * log.eta_true, log.z0, phys, 9.0)
    np.testing.assert_allclose(log.c_hat_initial.as_array(), expected.as_array())


def test_initial_eta_sources(eta_true, phys, c_true):
    """Test explicit eta0, initial_c and the scaled default."""
    truth = eta_true.as_array()
    plan = RunPlan.default(t_final=1.0)
    np.testing.assert_allclose(initial_eta(plan, truth, 0.9), 0.5 * truth)
    explicit = replace(plan, eta0=np.array([0.01, 0.002, 10.0]))
    np.testing.assert_array_equal(initial_eta(explicit, truth, 0.9), [0.01, 0.002, 10.0])
    from_c = replace(plan, initial_c=c_true)
    np.testing.assert_allclose(initial_eta(from_c, truth, 0.9), truth, rtol=1e-12)


def test_braked_rotor_aborts_with_partial_log():
    """Test a rotor driven through the floor ends the run and keeps the rows so far."""
    plan = RunPlan.default(t_final=5.0)
    plan = replace(plan, plant=replace(plan.plant, torque=TorqueProfile(kind="constant", magnitude=1e3)))
    log = EstimationPipeline(plan).run()
    assert log.aborted
    assert log.abort_reason
    assert log.abort_time is not None and log.abort_time < 5.0
    assert 1 <= len(log) < 51


def test_final_c_hat_reads_last_row(short_result):
    """Test the last recorded estimate."""
    _, log, _ = short_result
    c = final_c_hat(log)
    assert isinstance(c, CpParams)
    assert c.c3 == log.last("c_hat3")


def test_disturbance_sup():
    """Test the empty-log case and the maximum."""
    log = RunLog(z0=0.9, eta_true=np.ones(3), g_true=np.ones(4))
    assert math.isnan(disturbance_sup(log))
    for value in (1e-3, 5e-3, 2e-3):
        row = dict.fromkeys(COLUMNS, 0.0)
        row["nlpre_residual"] = value
        log.append(row)
    assert disturbance_sup(log) == 5e-3
