"""src.services.baseline
고전 SVD 프리코딩 + water-filling + 적응 변조 기준선 패키지
"""
from src.services.baseline.modulation import (
    SUPPORTED_ORDERS,
    analytic_ber,
    bits_per_symbol,
    constellation,
    gray_demodulate,
    gray_modulate,
    qfunc,
    simulate_awgn_ber,
)
from src.services.baseline.water_filling import PowerAllocation, waterfill, waterfill_bisection
from src.services.baseline.classic_baseline import (
    BitAllocation,
    allocate_and_simulate,
    candidate_splits,
    choose_allocation,
    precode,
    simulate_allocation,
)

__all__ = [
    "SUPPORTED_ORDERS",
    "analytic_ber",
    "bits_per_symbol",
    "constellation",
    "gray_demodulate",
    "gray_modulate",
    "qfunc",
    "simulate_awgn_ber",
    "PowerAllocation",
    "waterfill",
    "waterfill_bisection",
    "BitAllocation",
    "allocate_and_simulate",
    "candidate_splits",
    "choose_allocation",
    "precode",
    "simulate_allocation",
]
