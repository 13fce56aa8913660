import math

import numpy as np
import pytest

from src.core.exceptions import DimensionMismatchError, InvalidInputError
from src.services.neural import (
    cross_entropy_loss,
    grad_check,
    mse_loss,
    power_normalize,
    power_normalize_backward,
)


def test_mse_of_equal_arrays_is_zero():
    loss, grad = mse_loss(np.ones((2, 3)), np.ones((2, 3)))
    assert loss == 0.0
    np.testing.assert_array_equal(grad, np.zeros((2, 3)))


def test_cross_entropy_of_uniform_logits():
    loss, _ = cross_entropy_loss(np.zeros((1, 4)), np.array([[0.0, 0.0, 1.0, 0.0]]))
    assert loss == pytest.approx(math.log(4))


@pytest.mark.parametrize("loss_fn", [mse_loss, cross_entropy_loss])
def test_loss_gradients(loss_fn, rng):
    pred = rng.standard_normal((5, 4))
    target = np.eye(4)[rng.integers(0, 4, size=5)]

    _, grad = loss_fn(pred, target)
    result = grad_check(lambda: loss_fn(pred, target)[0], [pred], [grad], rng, floor=1e-4)
    assert result.max_relative_error < 1e-6


def test_loss_input_validation():
    with pytest.raises(DimensionMismatchError):
        mse_loss(np.zeros((2, 3)), np.zeros((2, 2)))
    with pytest.raises(InvalidInputError):
        cross_entropy_loss(np.zeros((1, 3)), np.array([[1.0, 1.0, 0.0]]))


def test_power_normalize_scales_to_total_power():
    out = power_normalize(np.ones((1, 4)), 20.0)
    np.testing.assert_allclose(out, np.full((1, 4), math.sqrt(5.0)))
    assert np.sum(out ** 2) == pytest.approx(20.0)


def test_power_normalize_leaves_normalized_rows(rng):
    x = power_normalize(rng.standard_normal((6, 4)), 20.0)
    np.testing.assert_allclose(power_normalize(x, 20.0), x, atol=1e-12)
    np.testing.assert_allclose(np.sum(x ** 2, axis=1), 20.0, rtol=1e-12)


def test_power_normalize_zero_row_stays_finite():
    out = power_normalize(np.zeros((1, 4)), 20.0)
    np.testing.assert_array_equal(out, np.zeros((1, 4)))
    grad = power_normalize_backward(np.zeros((1, 4)), np.ones((1, 4)), 20.0)
    assert np.all(np.isfinite(grad))


def test_power_normalize_backward(rng):
    x = rng.standard_normal((3, 4))
    weights = rng.standard_normal((3, 4))

    def loss() -> float:
        return float(np.sum(weights * power_normalize(x, 20.0)))

    analytic = power_normalize_backward(x, weights, 20.0)
    assert grad_check(loss, [x], [analytic], rng, floor=1e-4).max_relative_error < 1e-6
