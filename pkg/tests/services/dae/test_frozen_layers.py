import numpy as np
import pytest

from src.core.exceptions import InvalidInputError
from src.models.dae_config import DaeVariant
from src.services.channel import ChannelRealization, sample_channels
from src.services.dae import configure_frozen, waterfill_powers
from src.services.linalg import complex_to_real_block


def test_svd_chain_is_identity(rng):
    for channel in sample_channels(rng, 1000):
        composite = configure_frozen(channel, DaeVariant.SVD).composite()
        np.testing.assert_allclose(composite, np.eye(4), atol=1e-9)


def test_plain_chain_is_embedded_channel(rng):
    channel = sample_channels(rng, 1)[0]
    chain = configure_frozen(channel, DaeVariant.PLAIN)
    np.testing.assert_allclose(chain.composite(), complex_to_real_block(channel.H), atol=1e-14)
    assert chain.allocation is None


@pytest.mark.parametrize("variant", list(DaeVariant))
def test_frozen_layers_have_zero_bias_and_no_training(variant, rng):
    channel = sample_channels(rng, 1)[0].with_noise(0.1)
    for layer in configure_frozen(channel, variant).layers():
        assert not layer.trainable
        np.testing.assert_array_equal(layer.b, 0.0)


def test_waterfill_allocation_layer(rng):
    channel = sample_channels(rng, 1)[0].with_noise(0.5)
    chain = configure_frozen(channel, DaeVariant.SVD_WF, power=20.0)
    powers = waterfill_powers(channel, 20.0)

    assert powers.sum() == pytest.approx(20.0)
    np.testing.assert_allclose(chain.allocation.W, complex_to_real_block(np.diag(np.sqrt(powers))))


def test_waterfill_noiseless_channel_splits_equally():
    channel = ChannelRealization.from_matrix(np.diag([2.0, 0.5])).with_noise(0.0)
    np.testing.assert_allclose(waterfill_powers(channel, 20.0), [10.0, 10.0])


def test_waterfill_variant_requires_noise_power():
    with pytest.raises(InvalidInputError):
        configure_frozen(ChannelRealization.from_matrix(np.eye(2)), DaeVariant.SVD_WF)
