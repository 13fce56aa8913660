"""src.services.linalg
소규모 복소 선형대수 패키지 (2x2 SVD, 대각 유사역행렬, 실수 블록 임베딩)
"""
from src.services.linalg.complex_linalg import (
    SvdFactors,
    svd,
    pinv_diag,
    complex_to_real_block,
    complex_to_real_vector,
    real_to_complex_vector,
)

__all__ = [
    "SvdFactors",
    "svd",
    "pinv_diag",
    "complex_to_real_block",
    "complex_to_real_vector",
    "real_to_complex_vector",
]
