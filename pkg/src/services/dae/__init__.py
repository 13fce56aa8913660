"""src.services.dae
SVD 임베딩 DAE 링크 (입력 인코딩, 고정 레이어, end-to-end 모델)
"""
from src.services.dae.encoding import (
    EncodedInput,
    bits_to_one_hot,
    centered_sigmoid,
    channel_feature,
    count_errors,
    csi_feature,
    decide_bits,
    encode_input,
    frame_ber,
    plain_csi_feature,
)
from src.services.dae.frozen_layers import FrozenChain, configure_frozen, waterfill_powers
from src.services.dae.architecture import ConfiguredLink, DaeForward, DaeModel

__all__ = [
    "EncodedInput",
    "bits_to_one_hot",
    "centered_sigmoid",
    "channel_feature",
    "count_errors",
    "csi_feature",
    "decide_bits",
    "encode_input",
    "frame_ber",
    "plain_csi_feature",
    "FrozenChain",
    "configure_frozen",
    "waterfill_powers",
    "ConfiguredLink",
    "DaeForward",
    "DaeModel",
]
