"""
Tests for wind, torque and run setup models.
"""

import math

import pytest

from app.model import PreconditionError
from app.sim import PlantSetup, TorqueProfile, WindProfile

pytestmark = [pytest.mark.unit, pytest.mark.sim]


def test_constant_wind():
    """Test a constant profile."""
    wind = WindProfile(base=9.0)
    assert wind.speed(123.0) == 9.0
    assert wind.derivative(5.0) == 0.0


def test_sinusoidal_wind_derivative():
    """Test the analytic derivative of a sinusoidal profile."""
    wind = WindProfile(kind="sinusoidal", base=9.0, amplitude=1.0, frequency=0.05)
    t, dt = 3.0, 1e-6
    numeric = (wind.speed(t + dt) - wind.speed(t - dt)) / (2 * dt)
    assert wind.derivative(t) == pytest.approx(numeric, rel=1e-6)


def test_piecewise_wind_steps():
    """Test breakpoints switch the speed from their start time on."""
    wind = WindProfile(kind="piecewise", base=8.0, breakpoints=((10.0, 9.0), (20.0, 7.5)))
    assert wind.speed(5.0) == 8.0
    assert wind.speed(10.0) == 9.0
    assert wind.speed(25.0) == 7.5
    assert not wind.has_derivative
    with pytest.raises(PreconditionError):
        wind.derivative(1.0)


def test_wind_rejects_amplitude_reaching_zero_speed():
    """Test the wind must stay positive."""
    with pytest.raises(PreconditionError):
        WindProfile(kind="sinusoidal", base=1.0, amplitude=1.0)


def test_compensating_torque():
    """Test Te = -J (v_w' / v_w) omega."""
    wind = WindProfile(kind="sinusoidal", base=9.0, amplitude=1.0, frequency=0.05)
    t, omega, J = 2.0, 30.0, 7.856
    expected = -J * wind.derivative(t) / wind.speed(t) * omega
    assert TorqueProfile(kind="s2").torque(t, omega, wind, J) == pytest.approx(expected)


def test_zero_torque_is_exactly_zero():
    """Test the off-grid torque."""
    assert TorqueProfile().torque(1.0, 10.0, WindProfile(), 7.856) == 0.0


def test_setup_rejects_compensation_without_derivative(phys, c_true):
    """Test the compensating torque needs a differentiable wind."""
    with pytest.raises(PreconditionError):
        PlantSetup(phys=phys, c=c_true, wind=WindProfile(kind="piecewise"), torque=TorqueProfile(kind="s2"))


def test_setup_step_counts(phys, c_true):
    """Test step and stride bookkeeping."""
    setup = PlantSetup(phys=phys, c=c_true, h=1e-3, t_final=2.0, record_stride=0.1)
    assert setup.n_steps == 2000
    assert setup.steps_per_record == 100
    assert setup.z0 == pytest.approx(0.9)
    assert math.isclose(setup.h * setup.steps_per_record, 0.1)
