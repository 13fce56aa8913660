"""src.services.linalg.complex_linalg
2x2 채널 행렬의 해석적 SVD와 고정(frozen) 레이어용 복소 ↔ 실수 블록 변환

모든 함수는 순수 함수이며 상태를 갖지 않습니다.
"""
import logging
from dataclasses import dataclass

import numpy as np

from src.core.exceptions import DimensionMismatchError, InvalidInputError

logger = logging.getLogger(__name__)

DEFAULT_PINV_TOL = 1e-12


# =============================================
# 결과 타입
# =============================================
@dataclass(frozen=True)
class SvdFactors:
    """H = U · diag(singular_values) · V^H"""
    U: np.ndarray  # (N_r, N_r) unitary
    singular_values: np.ndarray  # 내림차순, 음수 없음
    V: np.ndarray  # (N_t, N_t) unitary

    def reconstruct(self) -> np.ndarray:
        """U Λ V^H 재구성"""
        n_r, n_t = self.U.shape[0], self.V.shape[0]
        sigma = np.zeros((n_r, n_t), dtype=complex)
        np.fill_diagonal(sigma, self.singular_values)
        return self.U @ sigma @ self.V.conj().T

    def reconstruction_error(self, H: np.ndarray) -> float:
        """상대 Frobenius 재구성 오차 ‖UΛV^H − H‖_F / ‖H‖_F (H=0이면 절대 오차)"""
        norm = np.linalg.norm(H)
        error = np.linalg.norm(self.reconstruct() - H)
        return float(error / norm) if norm > 0 else float(error)

    def unitarity_error(self) -> float:
        """max(‖U^H U − I‖_F, ‖V^H V − I‖_F)"""
        eye_u = np.eye(self.U.shape[0])
        eye_v = np.eye(self.V.shape[0])
        return float(max(
            np.linalg.norm(self.U.conj().T @ self.U - eye_u),
            np.linalg.norm(self.V.conj().T @ self.V - eye_v),
        ))


# =============================================
# 내부 보조 함수
# =============================================
def _ensure_finite(M: np.ndarray, name: str) -> np.ndarray:
    array = np.asarray(M, dtype=complex)
    if array.size == 0 or not np.all(np.isfinite(array)):
        raise InvalidInputError(f"{name}에 유한하지 않은 값이 있거나 비어 있습니다")
    return array


def _orthogonal_complement(u: np.ndarray) -> np.ndarray:
    """단위 복소 2-벡터 u에 직교하는 단위 벡터 [-conj(u1), conj(u0)]"""
    return np.array([-np.conj(u[1]), np.conj(u[0])])


def _fix_phase(v: np.ndarray) -> np.ndarray:
    """첫 번째 0이 아닌 원소가 실수 양수가 되도록 위상 고정"""
    for entry in v:
        magnitude = abs(entry)
        if magnitude > 0:
            return v * (np.conj(entry) / magnitude)
    return v


def _dominant_eigenvector(A: np.ndarray, mu: float) -> np.ndarray:
    """
    2x2 Hermitian 행렬 A의 고유값 mu에 대한 단위 고유벡터

    (A − mu I)v = 0 의 두 후보 [b, mu − a], [mu − d, conj(b)] 중 노름이 큰 쪽을 사용합니다.
    """
    a, b, d = A[0, 0].real, A[0, 1], A[1, 1].real
    first = np.array([b, mu - a], dtype=complex)
    second = np.array([mu - d, np.conj(b)], dtype=complex)
    candidate = first if np.linalg.norm(first) >= np.linalg.norm(second) else second
    norm = np.linalg.norm(candidate)
    if norm == 0.0:
        # A = a·I: 모든 방향이 고유벡터
        return np.array([1.0, 0.0], dtype=complex)
    return candidate / norm


# =============================================
# SVD
# =============================================
def svd(H: np.ndarray) -> SvdFactors:
    """
    2x2 복소 행렬의 해석적 SVD

    H^H H 의 고유분해(이차방정식 근)로 V를 구하고, U는 H V 정규화와 직교 보완으로
    구성합니다. V 각 열의 첫 번째 0이 아닌 원소는 실수 양수로 고정됩니다.

    Args:
        H: (2, 2) 복소 행렬

    Returns:
        SvdFactors: U, 내림차순 특이값, V

    Raises:
        InvalidInputError: 유한하지 않은 입력 또는 2x2가 아닌 입력
    """
    H = _ensure_finite(H, "채널 행렬")
    if H.shape != (2, 2):
        raise InvalidInputError(f"해석적 SVD는 2x2 행렬만 지원합니다: shape={H.shape}")

    A = H.conj().T @ H
    half_trace = 0.5 * (A[0, 0].real + A[1, 1].real)
    half_gap = 0.5 * (A[0, 0].real - A[1, 1].real)
    mu_max = half_trace + np.hypot(half_gap, abs(A[0, 1]))

    v1 = _fix_phase(_dominant_eigenvector(A, mu_max))
    v2 = _fix_phase(_orthogonal_complement(v1))

    h_v1 = H @ v1
    sigma1 = float(np.linalg.norm(h_v1))
    u1 = h_v1 / sigma1 if sigma1 > 0 else np.array([1.0, 0.0], dtype=complex)

    u2 = _orthogonal_complement(u1)
    projection = np.vdot(u2, H @ v2)
    sigma2 = float(abs(projection))
    if sigma2 > 0:
        u2 = u2 * (projection / sigma2)

    if sigma2 > sigma1:
        # 수치상 동률에서만 발생
        u1, u2 = u2, u1
        v1, v2 = v2, v1
        sigma1, sigma2 = sigma2, sigma1

    U = np.column_stack([u1, u2])
    V = np.column_stack([v1, v2])
    return SvdFactors(U=U, singular_values=np.array([sigma1, sigma2]), V=V)


# =============================================
# 대각 유사역행렬
# =============================================
def pinv_diag(singular_values: np.ndarray, tol: float = DEFAULT_PINV_TOL) -> np.ndarray:
    """
    대각 행렬의 유사역행렬 대각 원소: λ_i > tol 이면 1/λ_i, 아니면 0

    Args:
        singular_values: 음수가 아닌 실수 배열
        tol: 0으로 간주할 임계값 (≥ 0)

    Returns:
        np.ndarray: 유사역행렬 대각 원소

    Raises:
        InvalidInputError: 음수 원소, 음수 tol, 유한하지 않은 값
    """
    values = np.asarray(singular_values, dtype=float)
    if tol < 0:
        raise InvalidInputError(f"tol은 0 이상이어야 합니다: {tol}")
    if not np.all(np.isfinite(values)):
        raise InvalidInputError("특이값에 유한하지 않은 값이 있습니다")
    if np.any(values < 0):
        raise InvalidInputError(f"특이값은 음수일 수 없습니다: {values.tolist()}")

    inverse = np.zeros_like(values)
    mask = values > tol
    inverse[mask] = 1.0 / values[mask]
    return inverse


# =============================================
# 복소 ↔ 실수 블록 임베딩
# =============================================
def complex_to_real_block(M: np.ndarray) -> np.ndarray:
    """
    복소 행렬을 실수 블록 행렬 [[Re, −Im], [Im, Re]] 로 임베딩합니다.

    embed(M) @ [Re z; Im z] == [Re(Mz); Im(Mz)]

    Args:
        M: (rows, cols) 복소 행렬 (스칼라는 1x1로 취급)

    Returns:
        np.ndarray: (2·rows, 2·cols) 실수 행렬
    """
    M = _ensure_finite(np.atleast_2d(M), "행렬")
    real, imag = M.real, M.imag
    return np.block([[real, -imag], [imag, real]])


def complex_to_real_vector(z: np.ndarray) -> np.ndarray:
    """마지막 축 기준 [Re z, Im z] 이어 붙이기 ((..., n) → (..., 2n))"""
    z = np.asarray(z, dtype=complex)
    return np.concatenate([z.real, z.imag], axis=-1)


def real_to_complex_vector(x: np.ndarray) -> np.ndarray:
    """complex_to_real_vector의 역변환 ((..., 2n) → (..., n))"""
    x = np.asarray(x, dtype=float)
    width = x.shape[-1]
    if width % 2 != 0:
        raise DimensionMismatchError(f"실수 표현의 길이는 짝수여야 합니다: {width}")
    half = width // 2
    return x[..., :half] + 1j * x[..., half:]
