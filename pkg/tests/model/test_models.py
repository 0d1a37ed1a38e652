"""
Tests for the model value types.
"""

import math

import pytest

from app.model import CpParams, CpFitCoefficients, PhysicalParams, PreconditionError

pytestmark = [pytest.mark.unit, pytest.mark.model]


def test_physical_params_build_defaults():
    """Test the reference turbine and its aggregate kappa."""
    phys = PhysicalParams.build()
    assert phys.area == pytest.approx(math.pi * 1.84 ** 2)
    assert phys.kappa == pytest.approx(0.5 * 1.225 * phys.area)
    assert phys.J == 7.856


def test_physical_params_reject_inconsistent_kappa():
    """Test kappa must equal rho * area / 2."""
    with pytest.raises(PreconditionError):
        PhysicalParams(rho=1.225, r=1.84, J=7.856, area=10.0, kappa=1.0)


def test_physical_params_explicit_area():
    """Test an explicit swept area overrides pi r^2."""
    phys = PhysicalParams.build(area=12.0)
    assert phys.kappa == pytest.approx(0.5 * 1.225 * 12.0)


def test_fit_coefficients_rejects_nonpositive_coefficient():
    """Test curve-fit coefficients other than kappa4 must be positive."""
    with pytest.raises(PreconditionError):
        CpFitCoefficients(kappa2=0.0)


def test_fit_coefficients_allows_zero_kappa4():
    """Test kappa4 may be zero."""
    assert CpFitCoefficients(kappa4=0.0).kappa4 == 0.0


def test_fit_coefficients_rejects_unknown_units():
    """Test pitch units are deg or rad."""
    with pytest.raises(PreconditionError):
        CpFitCoefficients(pitch_units="grad")


def test_cp_params_positive():
    """Test curve parameters must be positive."""
    with pytest.raises(PreconditionError):
        CpParams(1.0, 0.0, 1.0)


def test_cp_params_to_dict():
    """Test dictionary conversion."""
    assert CpParams(1.0, 2.0, 3.0).to_dict() == {"c1": 1.0, "c2": 2.0, "c3": 3.0}
