"""src.services.channel
Rayleigh 평탄 페이딩 채널, AWGN, 링크 버짓(SNR/Eb-N0) 변환 패키지
"""
from src.services.channel.channel_model import (
    ChannelRealization,
    sample_channel,
    sample_channels,
    sample_noise,
    apply_channel,
)
from src.services.channel.link_budget import LinkBudget, LinkUnit, convert_link, n0_from_ebn0_db

__all__ = [
    "ChannelRealization",
    "sample_channel",
    "sample_channels",
    "sample_noise",
    "apply_channel",
    "LinkBudget",
    "LinkUnit",
    "convert_link",
    "n0_from_ebn0_db",
]
