"""src.services.neural.grad_check
해석적 역전파 기울기를 중심 유한차분과 비교하는 검증 도구

무작위로 고른 파라미터 원소마다 ±h 섭동 손실을 계산합니다. signature_fn이 주어지면
섭동 중 활성화 부호 패턴이 바뀌는(꺾임을 지나는) 원소는 미분이 정의되지 않으므로
비교에서 제외하고 skipped로 집계합니다.
"""
import logging
from collections.abc import Callable, Hashable
from dataclasses import dataclass

import numpy as np

logger = logging.getLogger(__name__)

DEFAULT_STEP = 1e-5
DEFAULT_ENTRIES = 200
DEFAULT_FLOOR = 1e-6
# 분모 하한의 max|g| 비례 계수
DEFAULT_SCALE_FLOOR = 1e-3


@dataclass(frozen=True)
class GradCheckResult:
    """유한차분 검사 결과"""
    max_relative_error: float
    checked: int
    skipped: int

    def passed(self, tolerance: float) -> bool:
        return self.checked > 0 and self.max_relative_error < tolerance


def relative_error(analytic: float, numeric: float, floor: float = DEFAULT_FLOOR) -> float:
    """|a − n| / max(|a|, |n|, floor)"""
    return abs(analytic - numeric) / max(abs(analytic), abs(numeric), floor)


def grad_check(
    loss_fn: Callable[[], float],
    params: list[np.ndarray],
    grads: list[np.ndarray],
    rng: np.random.Generator,
    n_entries: int = DEFAULT_ENTRIES,
    step: float = DEFAULT_STEP,
    floor: float = DEFAULT_FLOOR,
    scale_floor: float = DEFAULT_SCALE_FLOOR,
    signature_fn: Callable[[], Hashable] | None = None
) -> GradCheckResult:
    """
    Args:
        loss_fn: 현재 params로 손실을 다시 계산하는 함수 (잡음 등 난수는 고정되어 있어야 함)
        params: 제자리에서 섭동할 파라미터 배열 목록
        grads: params에 대응하는 해석적 기울기
        rng: 검사 원소 선택용 난수 생성기
        n_entries: 검사할 원소 수 (전체 원소가 더 적으면 전부)
        step: 유한차분 간격 h
        floor: 상대오차 분모 하한 (절대값)
        scale_floor: 분모 하한의 max|g| 비례 계수 (실제 하한 = max(floor, scale_floor · max|g|))
        signature_fn: 현재 params의 활성화 부호 패턴을 돌려주는 함수

    Returns:
        GradCheckResult
    """
    sizes = np.array([p.size for p in params])
    offsets = np.concatenate([[0], np.cumsum(sizes)])
    total = int(offsets[-1])
    chosen = np.sort(rng.choice(total, size=min(n_entries, total), replace=False))

    peak = max((float(np.abs(g).max()) for g in grads if g.size), default=0.0)
    floor = max(floor, scale_floor * peak)

    base_signature = signature_fn() if signature_fn else None
    worst = 0.0
    checked = 0
    skipped = 0

    for flat in chosen:
        which = int(np.searchsorted(offsets, flat, side="right") - 1)
        param = params[which].reshape(-1)
        index = int(flat - offsets[which])
        original = param[index]

        param[index] = original + step
        loss_plus = loss_fn()
        signature_plus = signature_fn() if signature_fn else None
        param[index] = original - step
        loss_minus = loss_fn()
        signature_minus = signature_fn() if signature_fn else None
        param[index] = original

        if signature_fn and not (signature_plus == signature_minus == base_signature):
            skipped += 1
            continue

        numeric = (loss_plus - loss_minus) / (2.0 * step)
        analytic = float(grads[which].reshape(-1)[index])
        worst = max(worst, relative_error(analytic, numeric, floor))
        checked += 1

    logger.debug(f"grad check: checked={checked}, skipped={skipped}, max_rel={worst:.3e}")
    return GradCheckResult(max_relative_error=worst, checked=checked, skipped=skipped)
