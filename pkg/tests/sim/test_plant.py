"""
Tests for the rotor simulation and the measurement model.
"""

import numpy as np
import pytest

from app.model import NumericAbortError, PreconditionError, theta_from_c, z_dot_s2
from app.sim import (
    MeasurementNoise,
    PlantSetup,
    PlantState,
    TorqueProfile,
    WindProfile,
    draw_noise,
    measure,
    omega_dot,
    simulate,
    step,
)

pytestmark = [pytest.mark.unit, pytest.mark.sim]

WIND = WindProfile(base=9.0)
NO_TORQUE = TorqueProfile()


def _setup(phys, c, **kwargs) -> PlantSetup:
    params = dict(phys=phys, c=c, wind=WIND, omega0=10.0)
    params.update(kwargs)
    return PlantSetup(**params)


def test_step_at_equilibrium_is_stationary(phys, c_true):
    """Test a rotor at z = c2 does not accelerate."""
    state = PlantState(omega=9.0 / c_true.c2)
    assert omega_dot(0.0, state.omega, WIND, NO_TORQUE, phys, c_true) == pytest.approx(0.0, abs=1e-10)
    after = step(state, WIND, NO_TORQUE, phys, c_true, 1e-3)
    assert after.omega == pytest.approx(state.omega, rel=1e-12)
    assert after.t == pytest.approx(1e-3)


def test_step_rejects_bad_inputs(phys, c_true):
    """Test h <= 0 and omega <= 0 are rejected."""
    with pytest.raises(PreconditionError):
        step(PlantState(omega=10.0), WIND, NO_TORQUE, phys, c_true, 0.0)
    with pytest.raises(PreconditionError):
        step(PlantState(omega=0.0), WIND, NO_TORQUE, phys, c_true, 1e-3)


def test_step_aborts_below_floor(phys, c_true):
    """Test a rotor braked through the floor aborts with the failure time."""
    torque = TorqueProfile(kind="constant", magnitude=1e4)
    with pytest.raises(NumericAbortError) as exc:
        step(PlantState(omega=1e-3, t=2.0), WIND, torque, phys, c_true, 1e-3, omega_min=1e-6)
    assert exc.value.t is not None


def test_simulate_converges_to_c2(phys, c_true):
    """Test z falls monotonically from 0.9 to within 1e-3 of c2."""
    traj = simulate(_setup(phys, c_true, t_final=500.0, record_stride=1.0))
    assert traj.z[0] == pytest.approx(0.9)
    assert np.all(np.diff(traj.z) <= 1e-12)
    assert abs(traj.z[-1] - c_true.c2) < 1e-3


def test_simulate_approaches_c2_from_below(phys, c_true):
    """Test a start with z(0) < c2 rises monotonically toward c2."""
    traj = simulate(_setup(phys, c_true, omega0=9.0 / (0.5 * c_true.c2), t_final=200.0, record_stride=1.0))
    assert np.all(np.diff(traj.z) >= -1e-12)
    assert traj.z[-1] < c_true.c2 + 1e-12


def test_simulate_records_analytic_z_dot(phys, c_true):
    """Test the logged z' equals the vector field."""
    theta = theta_from_c(c_true, phys, 9.0)
    traj = simulate(_setup(phys, c_true, t_final=20.0))
    expected = -traj.z ** 3 * (theta.theta1 * traj.z - theta.theta2) * np.exp(-theta.theta3 * traj.z)
    np.testing.assert_allclose(traj.z_dot, expected, rtol=1e-10, atol=1e-14)


def test_simulate_compensated_wind_obeys_z_dot_s2(phys, c_true):
    """Test sinusoidal wind with the compensating torque follows the wind-independent field."""
    theta_bar = theta_from_c(c_true, phys, None)
    setup = _setup(
        phys,
        c_true,
        wind=WindProfile(kind="sinusoidal", base=9.0, amplitude=1.0, frequency=0.05),
        torque=TorqueProfile(kind="s2"),
        t_final=50.0,
        wind_weighted_xi=True,
    )
    traj = simulate(setup)
    expected = np.array([z_dot_s2(z, v, theta_bar) for z, v in zip(traj.z, traj.v_w)])
    assert np.max(np.abs(traj.z_dot - expected)) < 1e-9


def test_simulate_zero_length_run(phys, c_true):
    """Test a zero horizon gives an empty trajectory."""
    traj = simulate(_setup(phys, c_true, t_final=0.0))
    assert len(traj) == 0


@pytest.mark.slow
def test_step_halving_convergence_order(phys, c_true):
    """Test Richardson ratios of the final speed are close to 16."""
    finals = [simulate(_setup(phys, c_true, h=h, t_final=20.0, record_stride=20.0)).omega[-1] for h in (0.2, 0.1, 0.05)]
    ratio = (finals[0] - finals[1]) / (finals[1] - finals[2])
    assert 12.0 < ratio < 20.0


def test_measure_zero_noise_is_truth():
    """Test zero amplitudes return the truth."""
    state = PlantState(omega=10.0, t=1.0)
    rng = MeasurementNoise().generator()
    assert measure(state, WIND, MeasurementNoise(), rng) == (10.0, 9.0)


def test_measure_respects_amplitudes():
    """Test draws stay within the configured amplitudes."""
    noise = MeasurementNoise(wind_amplitude=0.3, rotor_amplitude=0.5, seed=3)
    rng = noise.generator()
    draws = np.array([draw_noise(noise, rng) for _ in range(100_000)])
    assert np.max(np.abs(draws[:, 0])) <= 0.3
    assert np.max(np.abs(draws[:, 1])) <= 0.5
    assert np.max(np.abs(draws[:, 0])) > 0.29


def test_measure_seeded_sequences_repeat():
    """Test a fixed seed replays the same measurements."""
    noise = MeasurementNoise(wind_amplitude=0.3, rotor_amplitude=0.5, seed=11)
    state = PlantState(omega=10.0)
    first = [measure(state, WIND, noise, r) for r in [noise.generator()] for _ in range(100)]
    second = [measure(state, WIND, noise, r) for r in [noise.generator()] for _ in range(100)]
    assert first == second


def test_measurement_noise_rejects_negative_amplitude():
    """Test amplitudes must be non-negative."""
    with pytest.raises(PreconditionError):
        MeasurementNoise(wind_amplitude=-0.1)
