"""
Tests for the fixed-step integrator.
"""

import math

import numpy as np
import pytest

from app.sim import rk4_step, rk4_step_sampled

pytestmark = [pytest.mark.unit, pytest.mark.sim]


def test_rk4_exponential_decay():
    """Test x' = -x over one unit of time."""
    x, h = 1.0, 0.01
    for k in range(100):
        x = rk4_step(lambda t, y: -y, k * h, x, h)
    assert x == pytest.approx(math.exp(-1.0), rel=1e-9)


def test_rk4_vector_state():
    """Test a harmonic oscillator keeps its energy."""
    x, h = np.array([1.0, 0.0]), 1e-2
    for k in range(628):
        x = rk4_step(lambda t, y: np.array([y[1], -y[0]]), k * h, x, h)
    assert float(x @ x) == pytest.approx(1.0, rel=1e-8)


def test_rk4_sampled_matches_time_dependent_form():
    """Test sampled inputs at start, midpoint and end reproduce the time-dependent step."""
    h, x0 = 0.1, 0.5
    direct = rk4_step(lambda t, y: -y + math.sin(t), 1.0, x0, h)
    sampled = rk4_step_sampled(lambda y, u: -y + u, x0, h, math.sin(1.0), math.sin(1.05), math.sin(1.1))
    assert sampled == pytest.approx(direct, rel=1e-15)
