import numpy as np
import pytest

from src.core.exceptions import UnconfiguredModelError
from src.models.dae_config import DaeConfig, DaeVariant, InputMode
from src.services.channel import sample_channels
from src.services.dae import DaeModel
from src.services.diagnostics import GRAD_TOLERANCE, run_grad_check
from src.services.neural import power_normalize


def _link(model, rng, noise_power=0.1):
    return model.configure(sample_channels(rng, 1)[0].with_noise(noise_power))


def _bits(rng, batch, n_s):
    return 2.0 * rng.integers(0, 2, size=(batch, n_s)) - 1.0


@pytest.mark.parametrize("variant", list(DaeVariant))
def test_transmit_power_is_fixed(variant, rng):
    model = DaeModel(DaeConfig(variant=variant), rng)
    for channel in sample_channels(rng, 20):
        link = model.configure(channel.with_noise(10.0 ** rng.uniform(-2.0, 2.5)))
        energy = np.sum(np.abs(model.transmit(link, _bits(rng, 1000, 4))) ** 2, axis=1)
        np.testing.assert_allclose(energy, 20.0, rtol=1e-9)


def test_output_widths_follow_input_mode(rng):
    bit_model = DaeModel(DaeConfig(n_s=4), rng)
    one_hot_model = DaeModel(DaeConfig(n_s=4, input_mode=InputMode.ONE_HOT), rng)
    bits = _bits(rng, 3, 4)

    bit_raw = bit_model.forward(_link(bit_model, rng), bits, np.zeros((3, 4))).raw
    one_hot_raw = one_hot_model.forward(_link(one_hot_model, rng), bits, np.zeros((3, 4))).raw
    assert bit_raw.shape == (3, 4)
    assert np.all(np.abs(bit_raw) < 1.0)
    assert one_hot_raw.shape == (3, 16)


def test_noiseless_svd_link_delivers_normalized_signal(rng):
    model = DaeModel(DaeConfig(n_s=2), rng)
    link = _link(model, rng, noise_power=0.0)
    result = model.forward(link, _bits(rng, 50, 2), np.zeros((50, 4)))

    delivered = result.rx_cache.inputs[0][:, :4]
    np.testing.assert_allclose(delivered, power_normalize(result.allocated, 20.0), atol=1e-9)


def test_forward_is_deterministic(rng):
    config = DaeConfig(n_s=2)
    first = DaeModel(config, np.random.default_rng(5))
    second = DaeModel(config, np.random.default_rng(5))
    link = _link(first, rng, noise_power=0.0)
    bits = _bits(rng, 10, 2)

    np.testing.assert_array_equal(
        first.forward(link, bits, np.zeros((10, 4))).raw,
        second.forward(link, bits, np.zeros((10, 4))).raw,
    )


def test_forward_requires_configured_link(rng):
    model = DaeModel(DaeConfig(n_s=2), rng)
    with pytest.raises(UnconfiguredModelError):
        model.forward(None, _bits(rng, 1, 2), np.zeros((1, 4)))


def test_only_network_weights_are_trainable(rng):
    model = DaeModel(DaeConfig(), rng)
    params = model.parameters()
    assert len(params) == 2 * 2 * 6
    assert all(p.flags.writeable for p in params)
    assert len(model.adam.m) == len(params)
    assert not model.is_trained


def test_plain_and_svd_share_layer_shapes_past_input(rng):
    plain = DaeModel(DaeConfig(variant=DaeVariant.PLAIN), rng)
    svd = DaeModel(DaeConfig(variant=DaeVariant.SVD), rng)
    for net in ("tx_net", "rx_net"):
        plain_shapes = [p.shape for p in getattr(plain, net).parameters()[1:]]
        svd_shapes = [p.shape for p in getattr(svd, net).parameters()[1:]]
        assert plain_shapes == svd_shapes


@pytest.mark.parametrize(
    "config",
    [
        DaeConfig(),
        DaeConfig(residuals=False),
        DaeConfig(variant=DaeVariant.PLAIN),
    ],
)
def test_full_graph_gradient(config):
    report = run_grad_check(config, seed=0)
    assert len(report.checks) == 15
    for check in report.checks:
        assert check.detail["checked"] > 0
        assert check.detail["max_relative_error"] < GRAD_TOLERANCE


@pytest.mark.parametrize(
    "config",
    [DaeConfig(variant=DaeVariant.SVD_WF, n_s=2), DaeConfig(input_mode=InputMode.ONE_HOT, n_s=2)],
)
def test_gradient_for_other_variants(config):
    report = run_grad_check(config, seed=1, n_channels=2, n_inputs=2, n_entries=100)
    assert report.passed


@pytest.mark.parametrize("n_s", [2, 4])
@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_one_hot_gradient_passes_across_seeds(n_s, seed):
    config = DaeConfig(input_mode=InputMode.ONE_HOT, n_s=n_s)
    report = run_grad_check(config, seed=seed, n_channels=2, n_inputs=2, n_entries=100)
    assert report.passed
