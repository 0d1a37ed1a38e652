"""
Tests for the interval-excitation index.
"""

import numpy as np
import pytest

from app.model import PreconditionError
from app.regressor import RegressorSample, gram_matrix, ie_index

pytestmark = [pytest.mark.unit, pytest.mark.regressor]


def _samples(phi_fn, n=501, t_end=10.0):
    return [RegressorSample(t=t, y=np.zeros(2), phi=phi_fn(t)) for t in np.linspace(0.0, t_end, n)]


def test_zero_regressor_has_zero_index():
    """Test phi = 0 gives a zero index."""
    assert ie_index(_samples(lambda t: np.zeros((2, 4)))) == 0.0


def test_rich_regressor_has_positive_index():
    """Test four independent harmonics excite every direction."""
    def phi(t):
        return np.array([
            [np.sin(t), np.cos(t), np.sin(2 * t), np.cos(2 * t)],
            [np.cos(3 * t), 1.0, np.sin(3 * t), t / 10.0],
        ])
    assert ie_index(_samples(phi)) > 0.1


def test_rank_deficient_regressor_is_not_exciting():
    """Test a regressor confined to one direction has a vanishing index."""
    assert ie_index(_samples(lambda t: np.outer([1.0, 0.5], [1.0, 1.0, 0.0, 0.0]) * np.sin(t))) == pytest.approx(0.0, abs=1e-12)


def test_gram_matrix_is_symmetric():
    """Test the Gram matrix is symmetric."""
    gram = gram_matrix(_samples(lambda t: np.array([[t, 1.0, t * t, 0.0], [0.0, t, 1.0, np.sin(t)]])))
    np.testing.assert_array_equal(gram, gram.T)


def test_empty_window_rejected():
    """Test an empty window raises."""
    with pytest.raises(PreconditionError):
        gram_matrix([])
