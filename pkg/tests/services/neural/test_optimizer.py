import numpy as np
import pytest

from src.core.exceptions import InvalidInputError
from src.services.neural import AdamState, adam_step


def test_zero_gradient_leaves_parameters_unchanged():
    w = np.array([0.3, -1.2])
    state = AdamState.for_params([w])
    adam_step([w], [np.zeros(2)], state, lr=1e-3)
    np.testing.assert_array_equal(w, [0.3, -1.2])
    assert state.t == 1


def test_first_step_moves_by_learning_rate():
    w = np.array([0.5, 0.5])
    state = AdamState.for_params([w])
    adam_step([w], [np.array([3.0, -0.2])], state, lr=1e-3)
    np.testing.assert_allclose(w, [0.5 - 1e-3, 0.5 + 1e-3], rtol=1e-6)


def test_converges_on_quadratic():
    w = np.array([1.0])
    state = AdamState.for_params([w])
    for _ in range(1000):
        adam_step([w], [2.0 * w], state, lr=1e-2)
    assert abs(w[0]) < 1e-3


def test_rejects_bad_arguments():
    w = np.zeros(2)
    state = AdamState.for_params([w])
    with pytest.raises(InvalidInputError):
        adam_step([w], [np.zeros(2)], state, lr=0.0)
    with pytest.raises(InvalidInputError):
        adam_step([w, w], [np.zeros(2), np.zeros(2)], state, lr=1e-3)
