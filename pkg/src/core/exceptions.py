"""src.core.exceptions
커스텀 예외 정의 (Spring CustomException 스타일)

CLI 종료 코드: 1 = 검증 오류, 2 = 실행 중 오류
"""

EXIT_VALIDATION = 1
EXIT_RUNTIME = 2


class CustomError(Exception):
    """
    커스텀 예외 (Spring의 CustomException 스타일)

    간단하게 에러 메시지만 전달하여 사용합니다.

    Examples:
        >>> raise CustomError("체크포인트 저장에 실패했습니다")
        >>> raise InvalidInputError("채널 행렬에 NaN이 포함되어 있습니다")

    Usage:
        try:
            train(config, schedule)
        except CustomError as e:
            logger.error(f"처리 실패: {e.message}", exc_info=True)
    """

    exit_code: int = EXIT_RUNTIME

    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)

    def __str__(self):
        return self.message


class InvalidInputError(CustomError):
    """유한하지 않은 값, 음수 특이값 등 잘못된 입력"""
    exit_code = EXIT_VALIDATION


class DimensionMismatchError(CustomError):
    """행렬/벡터 차원 불일치"""
    exit_code = EXIT_VALIDATION


class InfeasibleAllocationError(CustomError):
    """전력/비트 할당이 불가능한 경우 (모든 채널 이득이 0, 지원하지 않는 N_s 등)"""


class UnconfiguredModelError(CustomError):
    """고정(frozen) 레이어가 채널에 맞게 설정되지 않은 상태에서 forward 호출"""


class DivergenceError(CustomError):
    """학습 손실이 유한하지 않아 학습을 중단"""


class CheckpointError(CustomError):
    """체크포인트 입출력 실패"""


class CheckpointNotFoundError(CheckpointError):
    """지정한 체크포인트 파일이 없음"""
    exit_code = EXIT_VALIDATION


class CorruptCheckpointError(CheckpointError):
    """잘렸거나 손상된 체크포인트 파일"""


class CheckpointVersionError(CheckpointError):
    """지원하지 않는 체크포인트 포맷 버전"""


class ConfigHashMismatchError(CheckpointError):
    """체크포인트의 설정 해시가 현재 설정과 다름"""
    exit_code = EXIT_VALIDATION


class ConfigValidationError(CustomError):
    """실험 설정 파일/오버라이드 검증 실패"""
    exit_code = EXIT_VALIDATION


class RunConflictError(CustomError):
    """이전 실행 산출물을 덮어쓰려는 경우 (--force 필요)"""
    exit_code = EXIT_VALIDATION
