"""src.services.evaluation
Monte Carlo BER 스윕, 신뢰구간, 곡선 비교
"""
from src.services.evaluation.intervals import wilson_interval, within_sigmas, zero_error_upper_bound
from src.services.evaluation.evaluator import (
    BaselineLinkSimulator,
    DaeLinkSimulator,
    LinkSimulator,
    ber_sweep,
    frames_per_channel,
    held_out_channels,
)
from src.services.evaluation.comparison import (
    CURVE_COLUMNS,
    compare_curves,
    write_comparison_csv,
    write_comparison_json,
    write_curve_csv,
    write_curve_json,
)

__all__ = [
    "wilson_interval",
    "within_sigmas",
    "zero_error_upper_bound",
    "BaselineLinkSimulator",
    "DaeLinkSimulator",
    "LinkSimulator",
    "ber_sweep",
    "frames_per_channel",
    "held_out_channels",
    "CURVE_COLUMNS",
    "compare_curves",
    "write_comparison_csv",
    "write_comparison_json",
    "write_curve_csv",
    "write_curve_json",
]
