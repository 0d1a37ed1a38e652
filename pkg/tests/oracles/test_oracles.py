"""
Tests for the reference routines.
"""

import numpy as np
import pytest

from app.model import PreconditionError, z_star
from app.oracles import (
    OracleReport,
    cofactor_adjugate,
    finite_difference_jacobian,
    grid_argmax_cp,
    ode_reference_solution,
)
from app.sim import PlantSetup, WindProfile, simulate

pytestmark = [pytest.mark.unit, pytest.mark.oracles]


def test_grid_argmax_close_to_closed_form(c_true):
    """Test the grid maximizer lands within one grid spacing of z_star."""
    n = 10_001
    grid = grid_argmax_cp(c_true, 1e-4, 1.0, n)
    assert abs(grid - z_star(c_true)) <= (1.0 - 1e-4) / (n - 1)
    assert grid == pytest.approx(0.2316, abs=1e-3)


def test_grid_argmax_rejects_bad_grid(c_true):
    """Test grid bounds and size are validated."""
    with pytest.raises(PreconditionError):
        grid_argmax_cp(c_true, 0.0, 1.0, 100)
    with pytest.raises(PreconditionError):
        grid_argmax_cp(c_true, 0.1, 1.0, 2)


def test_reference_solution_shares_record_times(phys, c_true):
    """Test the refined run is recorded on the coarse run's grid."""
    setup = PlantSetup(phys=phys, c=c_true, wind=WindProfile(base=9.0), h=1e-2, t_final=5.0, record_stride=0.5)
    coarse = simulate(setup)
    fine = ode_reference_solution(setup, refinement=4)
    np.testing.assert_allclose(fine.t, coarse.t)
    np.testing.assert_allclose(fine.z, coarse.z, atol=1e-10)
    with pytest.raises(PreconditionError):
        ode_reference_solution(setup, refinement=0)


def test_finite_difference_jacobian_of_linear_map():
    """Test a linear map's Jacobian is its matrix."""
    a = np.array([[1.0, 2.0, 0.0], [0.5, -1.0, 3.0]])
    np.testing.assert_allclose(finite_difference_jacobian(lambda x: a @ x, np.array([0.3, 10.0, -2.0])), a, atol=1e-8)


def test_cofactor_adjugate_of_invertible_matrix():
    """Test adj(M) = det(M) M^-1."""
    m = np.array([[4.0, 1.0, 0.0, 0.0], [1.0, 3.0, 1.0, 0.0], [0.0, 1.0, 2.0, 1.0], [0.0, 0.0, 1.0, 1.0]])
    np.testing.assert_allclose(cofactor_adjugate(m), np.linalg.det(m) * np.linalg.inv(m), atol=1e-12)
    with pytest.raises(PreconditionError):
        cofactor_adjugate(np.ones((2, 3)))


def test_report_pass_flag():
    """Test the pass flag derives from residual, tolerance and error."""
    assert OracleReport(name="a", residual=1e-9, tolerance=1e-8).passed
    assert not OracleReport(name="b", residual=1e-7, tolerance=1e-8).passed
    assert not OracleReport(name="c", residual=0.0, tolerance=1.0, error="boom").passed
    assert OracleReport(name="d", residual=0.0, tolerance=0.0).to_dict()["passed"] is True
