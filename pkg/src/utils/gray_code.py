"""src.utils.gray_code
이진 반사 Gray 코드 변환 (±1 비트 벡터 ↔ 정수 인덱스)

비트 표기: −1 → 0, +1 → 1, 첫 번째 원소가 최상위 비트(MSB)
"""
import numpy as np


def gray_encode(index: np.ndarray | int) -> np.ndarray:
    """인덱스 n → Gray 코드워드 n ^ (n >> 1)"""
    index = np.asarray(index, dtype=np.int64)
    return index ^ (index >> 1)


def gray_decode(codeword: np.ndarray | int) -> np.ndarray:
    """Gray 코드워드 → 인덱스 (gray_encode의 역함수)"""
    index = np.asarray(codeword, dtype=np.int64).copy()
    shift = index >> 1
    while np.any(shift):
        index ^= shift
        shift >>= 1
    return index


def bits_to_codeword(bits: np.ndarray) -> np.ndarray:
    """±1 비트 (..., k) → 정수 코드워드 (...)"""
    binary = (np.asarray(bits) > 0).astype(np.int64)
    width = binary.shape[-1]
    weights = 1 << np.arange(width - 1, -1, -1, dtype=np.int64)
    return binary @ weights


def codeword_to_bits(codeword: np.ndarray | int, width: int) -> np.ndarray:
    """정수 코드워드 (...) → ±1 비트 (..., width)"""
    codeword = np.asarray(codeword, dtype=np.int64)
    shifts = np.arange(width - 1, -1, -1, dtype=np.int64)
    binary = (codeword[..., None] >> shifts) & 1
    return (2 * binary - 1).astype(float)
