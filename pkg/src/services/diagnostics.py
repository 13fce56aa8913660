"""src.services.diagnostics
selftest (해석적 오라클 묶음) 과 전체 그래프 기울기 검증

각 검사는 CheckResult 하나를 만들며, 실패해도 나머지 검사는 계속 수행합니다.
"""
import logging
import time
from collections.abc import Callable

import numpy as np

from src.models.dae_config import DaeConfig, DaeVariant
from src.models.diagnostics import CheckResult, DiagnosticsReport
from src.services.baseline import analytic_ber, simulate_awgn_ber, waterfill, waterfill_bisection
from src.services.channel import LinkUnit, convert_link, sample_channel, sample_channels
from src.services.dae import DaeModel, configure_frozen
from src.services.evaluation import within_sigmas
from src.services.neural import grad_check
from src.utils.common import STREAM_DIAGNOSTICS, derive_rng

logger = logging.getLogger(__name__)

TOLERANCE = 1e-9
SVD_TOLERANCE = 1e-10
GRAD_TOLERANCE = 1e-4
GRAD_CHECK_N0_RANGE_DB = (-20.0, 0.0)

# (N_s → 반올림된 Eb/N0 범위 dB), P = 20 W, N0 ∈ [−20, 25] dB, SNR ∈ [−12, 33] dB
LINK_BUDGET_TABLE = {1: (-12, 33), 2: (-15, 30), 4: (-18, 27), 6: (-20, 25)}
LINK_BUDGET_SNR = (-12, 33)
LINK_BUDGET_N0_DB = (25.0, -20.0)

QAM_ORDERS = (2, 4, 16)
QAM_EBN0_DB = (0.0, 4.0, 8.0, 12.0)


# =============================================
# 개별 오라클
# =============================================
def check_svd(rng: np.random.Generator, count: int = 10000) -> CheckResult:
    """재구성/유니터리 오차와 U^H H V = diag(λ)"""
    reconstruction, unitarity, diagonal = 0.0, 0.0, 0.0
    for channel in sample_channels(rng, count):
        factors = channel.factors
        reconstruction = max(reconstruction, factors.reconstruction_error(channel.H))
        unitarity = max(unitarity, factors.unitarity_error())
        rotated = factors.U.conj().T @ channel.H @ factors.V
        diagonal = max(diagonal, float(np.abs(rotated - np.diag(factors.singular_values)).max()))
    worst = max(reconstruction, unitarity, diagonal)
    return CheckResult(
        name="svd",
        passed=worst < SVD_TOLERANCE,
        detail={"channels": count, "reconstruction": reconstruction, "unitarity": unitarity, "diagonalization": diagonal},
    )


def check_waterfill(rng: np.random.Generator, count: int = 10000) -> CheckResult:
    """Σp = P, KKT 상보 여유성, 이분법 오라클 일치"""
    sum_error, kkt_error, oracle_error = 0.0, 0.0, 0.0
    for _ in range(count):
        lambda_sq = rng.exponential(1.0, size=2)
        noise_power = 10.0 ** rng.uniform(-2.0, 1.0)
        power = rng.uniform(0.1, 100.0)

        result = waterfill(lambda_sq, noise_power, power)
        oracle = waterfill_bisection(lambda_sq, noise_power, power)
        floor = noise_power / lambda_sq
        on = result.powers > 0

        sum_error = max(sum_error, abs(result.powers.sum() - power))
        if np.any(on):
            kkt_error = max(kkt_error, float(np.abs(result.water_level - result.powers[on] - floor[on]).max()))
        if np.any(~on):
            kkt_error = max(kkt_error, float(np.maximum(0.0, result.water_level - floor[~on]).max()))
        oracle_error = max(oracle_error, float(np.abs(result.powers - oracle.powers).max()))

    worst = max(sum_error, kkt_error, oracle_error)
    return CheckResult(
        name="waterfill",
        passed=worst <= TOLERANCE,
        detail={"instances": count, "sum": sum_error, "kkt": kkt_error, "bisection": oracle_error},
    )


def check_link_budget(power: float = 20.0) -> CheckResult:
    """N0 ∈ [−20, 25] dB 에 대한 SNR, Eb/N0 범위 (정수 반올림)"""
    mismatches = []
    for n_s, expected in LINK_BUDGET_TABLE.items():
        snr = tuple(round(convert_link(power, n_s, n0, LinkUnit.N0_DB, LinkUnit.SNR_DB)) for n0 in LINK_BUDGET_N0_DB)
        ebn0 = tuple(round(convert_link(power, n_s, n0, LinkUnit.N0_DB, LinkUnit.EBN0_DB)) for n0 in LINK_BUDGET_N0_DB)
        if snr != LINK_BUDGET_SNR or ebn0 != expected:
            mismatches.append({"n_s": n_s, "snr": snr, "ebn0": ebn0})
    return CheckResult(name="link_budget", passed=not mismatches, detail={"mismatches": mismatches})


def check_frozen_identity(rng: np.random.Generator, count: int = 1000) -> CheckResult:
    """svd 변형: Λ⁺ U^H H V 실수 임베딩 = I"""
    worst = 0.0
    for channel in sample_channels(rng, count):
        composite = configure_frozen(channel, DaeVariant.SVD).composite()
        worst = max(worst, float(np.abs(composite - np.eye(composite.shape[0])).max()))
    return CheckResult(name="frozen_identity", passed=worst < TOLERANCE, detail={"channels": count, "max_error": worst})


def check_power_constraint(
    rng: np.random.Generator,
    n_channels: int = 100,
    batch: int = 1000,
    config: DaeConfig | None = None
) -> CheckResult:
    """임의 초기화 송신 DAE의 모든 송신 벡터가 ‖x‖² = P"""
    config = config or DaeConfig()
    model = DaeModel(config, rng)
    worst = 0.0
    for channel in sample_channels(rng, n_channels):
        noise_power = 10.0 ** (rng.uniform(-20.0, 25.0) / 10.0)
        link = model.configure(channel.with_noise(noise_power))
        bits = 2.0 * rng.integers(0, 2, size=(batch, config.n_s)) - 1.0
        energy = np.sum(np.abs(model.transmit(link, bits)) ** 2, axis=-1)
        worst = max(worst, float(np.abs(energy - config.power).max() / config.power))
    return CheckResult(
        name="power_constraint",
        passed=worst <= TOLERANCE,
        detail={"forward_passes": n_channels * batch, "max_relative_error": worst},
    )


def check_qam_ber(rng: np.random.Generator, n_bits: int = 1_000_000) -> CheckResult:
    """Gray BPSK/4/16-QAM Monte Carlo BER vs 정확 이론식 (3σ)"""
    points = []
    for order in QAM_ORDERS:
        for ebn0_db in QAM_EBN0_DB:
            ebn0 = 10.0 ** (ebn0_db / 10.0)
            expected = analytic_ber(order, ebn0, exact=True)
            counts = simulate_awgn_ber(order, ebn0, n_bits, rng)
            points.append({
                "order": order,
                "ebn0_db": ebn0_db,
                "measured": counts.ber,
                "expected": expected,
                "bits": counts.bits,
                "passed": within_sigmas(counts.bit_errors, counts.bits, expected),
            })
    return CheckResult(name="qam_ber", passed=all(p["passed"] for p in points), detail={"points": points})


# =============================================
# 묶음 실행
# =============================================
def run_selftest(seed: int = 0, qam_bits: int = 1_000_000) -> DiagnosticsReport:
    """
    해석적 오라클 전체 실행

    Args:
        seed: 진단 시드
        qam_bits: QAM Monte Carlo 격자점당 비트 수

    Returns:
        DiagnosticsReport
    """
    checks: list[tuple[str, Callable[[], CheckResult]]] = [
        ("svd", lambda: check_svd(derive_rng(seed, STREAM_DIAGNOSTICS, 0))),
        ("waterfill", lambda: check_waterfill(derive_rng(seed, STREAM_DIAGNOSTICS, 1))),
        ("link_budget", check_link_budget),
        ("frozen_identity", lambda: check_frozen_identity(derive_rng(seed, STREAM_DIAGNOSTICS, 2))),
        ("power_constraint", lambda: check_power_constraint(derive_rng(seed, STREAM_DIAGNOSTICS, 3))),
        ("qam_ber", lambda: check_qam_ber(derive_rng(seed, STREAM_DIAGNOSTICS, 4), qam_bits)),
    ]

    results = []
    for name, run in checks:
        started = time.perf_counter()
        result = run()
        elapsed = time.perf_counter() - started
        logger.info(f"[selftest] {name}: {'PASS' if result.passed else 'FAIL'} ({elapsed:.2f}s)")
        results.append(result)
    return DiagnosticsReport(command="selftest", seed=seed, checks=results)


def run_grad_check(
    config: DaeConfig,
    seed: int = 0,
    n_channels: int = 5,
    n_inputs: int = 3,
    n_entries: int = 200,
    model: DaeModel | None = None
) -> DiagnosticsReport:
    """
    송신 DAE → 정규화 → 프리코딩 → 채널 → 전처리 → 수신 DAE → 손실 전체 그래프의 기울기 검증

    Args:
        config: DAE 구조 설정
        seed: 진단 시드
        n_channels: 검사 채널 수
        n_inputs: 채널당 입력(비트 벡터) 수
        n_entries: 검사당 비교할 파라미터 원소 수
        model: 검사할 모델 (None이면 새로 초기화)

    Returns:
        DiagnosticsReport: (채널, 입력) 쌍마다 CheckResult 하나
    """
    rng = derive_rng(seed, STREAM_DIAGNOSTICS, 10)
    model = model or DaeModel(config, rng)
    low, high = GRAD_CHECK_N0_RANGE_DB
    results = []

    for channel_index in range(n_channels):
        channel = sample_channel(rng, config.n_r, config.n_t)
        noise_power = 10.0 ** (rng.uniform(low, high) / 10.0)
        link = model.configure(channel.with_noise(noise_power))

        for input_index in range(n_inputs):
            bits = 2.0 * rng.integers(0, 2, size=(1, config.n_s)) - 1.0
            noise = model.draw_noise(rng, 1, noise_power)
            _, grads = model.loss_and_grads(link, bits, noise)
            result = grad_check(
                lambda: model.loss(link, bits, noise),
                model.parameters(),
                grads,
                rng,
                n_entries=n_entries,
                signature_fn=lambda: model.activation_signature(link, bits, noise),
            )
            results.append(CheckResult(
                name=f"channel{channel_index}_input{input_index}",
                passed=result.passed(GRAD_TOLERANCE),
                detail={
                    "max_relative_error": result.max_relative_error,
                    "checked": result.checked,
                    "skipped_kinks": result.skipped,
                    "noise_power": noise_power,
                },
            ))
            logger.info(
                f"[grad-check] channel {channel_index} input {input_index}: "
                f"max_rel={result.max_relative_error:.3e} (checked={result.checked}, skipped={result.skipped})"
            )
    return DiagnosticsReport(command="grad-check", seed=seed, checks=results)
