import numpy as np
import pytest

from src.core.exceptions import DimensionMismatchError
from src.services.neural import (
    SKIP_SCALE,
    Activation,
    AdamState,
    DenseLayer,
    FeedForwardNet,
    adam_step,
    default_skips,
    grad_check,
    mse_loss,
)


def test_default_skips_jump_two_layers():
    assert default_skips(5) == ((0, 2), (2, 4))
    assert default_skips(2) == ()


def test_residual_forward_adds_source_before_activation(rng):
    net = FeedForwardNet.build(3, 2, rng, hidden_layers=3, hidden_width=4)
    x = rng.standard_normal((2, 3))
    out, cache = net.forward(x)

    mixed = SKIP_SCALE * (net.layers[2].forward(cache.inputs[2]) + cache.outputs[0])
    np.testing.assert_allclose(cache.pre[2], mixed)
    np.testing.assert_allclose(cache.outputs[2], np.where(mixed > 0, mixed, 0.01 * mixed))
    np.testing.assert_allclose(out, cache.outputs[-1])


def test_shortcut_chain_keeps_activation_scale(rng):
    # 1→3→5 합이 층마다 누적되어 커지지 않아야 함
    x = rng.standard_normal((4096, 8))
    net = FeedForwardNet.build(8, 8, rng, hidden_layers=5, hidden_width=32)
    _, cache = net.forward(x)
    first = np.mean(cache.outputs[0] ** 2)
    last = np.mean(cache.outputs[4] ** 2)
    assert last < 2.0 * first


def test_mismatched_skip_widths_are_rejected(rng):
    layers = [DenseLayer.glorot(2, 4, rng), DenseLayer.glorot(4, 3, rng), DenseLayer.glorot(3, 3, rng)]
    activations = [Activation.LEAKY_RELU] * 3
    with pytest.raises(DimensionMismatchError):
        FeedForwardNet(layers, activations, skips=((0, 2),))


@pytest.mark.parametrize("residuals", [True, False])
def test_network_backward_matches_finite_difference(residuals, rng):
    net = FeedForwardNet.build(4, 3, rng, hidden_width=8, output_activation=Activation.TANH, residuals=residuals)
    x = rng.standard_normal((4, 4))
    target = rng.uniform(-0.9, 0.9, size=(4, 3))

    out, cache = net.forward(x)
    _, grad_out = mse_loss(out, target)
    grad_x, grads = net.backward(cache, grad_out)

    def loss() -> float:
        return mse_loss(net.forward(x)[0], target)[0]

    def signature() -> bytes:
        return net.activation_signature(net.forward(x)[1])

    result = grad_check(loss, net.parameters() + [x], grads + [grad_x], rng, n_entries=300, floor=1e-4, signature_fn=signature)
    assert result.checked > 0
    assert result.max_relative_error < 1e-5


def test_linear_network_gradient_is_exact(rng):
    layers = [DenseLayer.glorot(3, 5, rng), DenseLayer.glorot(5, 2, rng)]
    net = FeedForwardNet(layers, [Activation.IDENTITY, Activation.IDENTITY])
    x = rng.standard_normal((3, 3))
    target = rng.standard_normal((3, 2))

    out, cache = net.forward(x)
    _, grads = net.backward(cache, mse_loss(out, target)[1])
    result = grad_check(lambda: mse_loss(net.forward(x)[0], target)[0], net.parameters(), grads, rng, floor=1e-2)
    assert result.max_relative_error < 1e-8


def test_corrupted_backward_is_detected(rng):
    net = FeedForwardNet.build(3, 2, rng, hidden_layers=2, hidden_width=6)
    x = rng.standard_normal((4, 3))
    target = rng.standard_normal((4, 2))

    out, cache = net.forward(x)
    _, grads = net.backward(cache, mse_loss(out, target)[1])
    corrupted = [1.5 * g for g in grads]
    result = grad_check(
        lambda: mse_loss(net.forward(x)[0], target)[0], net.parameters(), corrupted, rng, floor=1e-4,
        signature_fn=lambda: net.activation_signature(net.forward(x)[1]),
    )
    assert result.max_relative_error > 1e-2


def test_frozen_layer_survives_training(rng):
    frozen = DenseLayer.frozen(rng.standard_normal((4, 4)))
    before = frozen.W.copy()
    layers = [DenseLayer.glorot(3, 4, rng), frozen, DenseLayer.glorot(4, 2, rng)]
    net = FeedForwardNet(layers, [Activation.LEAKY_RELU, Activation.IDENTITY, Activation.IDENTITY])
    assert len(net.parameters()) == 4

    state = AdamState.for_params(net.parameters())
    x = rng.standard_normal((8, 3))
    target = rng.standard_normal((8, 2))
    for _ in range(100):
        out, cache = net.forward(x)
        _, grads = net.backward(cache, mse_loss(out, target)[1])
        adam_step(net.parameters(), grads, state, lr=1e-2)

    np.testing.assert_array_equal(frozen.W, before)
    np.testing.assert_array_equal(frozen.b, np.zeros(4))


def test_tiny_gradient_entries_do_not_trip_the_check(rng):
    # 큰 상수 손실 위의 아주 작은 기울기: 유한차분 반올림 오차만 남음
    w = np.array([0.3, 1.0])

    def loss() -> float:
        return 100.0 + 1e-7 * w[0] + w[1] ** 2

    analytic = np.array([1e-7, 2.0 * w[1]])
    result = grad_check(loss, [w], [analytic], rng, n_entries=2)
    assert result.checked == 2
    assert result.max_relative_error < 1e-5

    corrupted = np.array([1e-7, 3.0 * w[1]])
    assert grad_check(loss, [w], [corrupted], rng, n_entries=2).max_relative_error > 1e-1
