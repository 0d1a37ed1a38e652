"""
Tests for the oracle check registry.
"""

import math

import numpy as np
import pytest

from app.oracles import check_names, run_checks

pytestmark = [pytest.mark.oracles]

FAST_CHECKS = [
    "curve_constants",
    "z_star_grid_search",
    "cp_general_vs_reduced",
    "parameter_roundtrip",
    "w_jacobian_finite_difference",
    "eta_jacobian_finite_difference",
    "monotonicity_above_bound",
    "monotonicity_at_bound",
    "adjugate_cofactor_agreement",
    "adjugate_identity",
    "swapping_lemma",
]

SLOW_CHECKS = [
    "plant_step_refinement",
    "key_identity_off_grid",
    "key_identity_compensated",
]


def test_registry_lists_every_check():
    """Test all checks are registered."""
    assert set(check_names()) == set(FAST_CHECKS + SLOW_CHECKS)


@pytest.mark.unit
@pytest.mark.parametrize("name", FAST_CHECKS)
def test_fast_check_passes(name):
    """Test each quick check passes within its tolerance."""
    (report,) = run_checks([name])
    assert report.error is None
    assert report.passed, f"{name}: {report.residual} > {report.tolerance}"
    assert report.runtime >= 0


@pytest.mark.slow
@pytest.mark.parametrize("name", SLOW_CHECKS)
def test_slow_check_passes(name):
    """Test each trajectory-based check passes."""
    (report,) = run_checks([name])
    assert report.passed, f"{name}: {report.residual} > {report.tolerance}"


def test_unknown_check_rejected():
    """Test unknown names raise."""
    with pytest.raises(ValueError, match="unknown checks"):
        run_checks(["no_such_check"])


def test_corrupted_adjugate_fails_agreement(mocker):
    """Test a broken adjugate is caught by the cofactor comparison."""
    mocker.patch(
        "app.estimator.ls_drem.det_and_adjugate",
        side_effect=lambda m: (float(np.linalg.det(m)), np.zeros((4, 4))),
    )
    reports = run_checks(["adjugate_cofactor_agreement", "adjugate_identity"])
    assert not any(r.passed for r in reports)


def test_raising_check_reported_as_failure(mocker):
    """Test a check that raises is reported with its message."""
    mocker.patch("app.estimator.ls_drem.det_and_adjugate", side_effect=RuntimeError("corrupted"))
    (report,) = run_checks(["adjugate_identity"])
    assert not report.passed
    assert report.error == "corrupted"
    assert math.isinf(report.residual)
