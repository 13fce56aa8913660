"""src.models.error_counts
프레임 단위 오류 집계 스키마

한 프레임 = N_s 비트 벡터 하나 = 심볼 결정 하나
"""
from dataclasses import dataclass


@dataclass(frozen=True)
class FrameErrorCounts:
    """비트/프레임 오류 수 집계 (덧셈으로 병합)"""
    bit_errors: int
    frame_errors: int
    frames: int
    bits_per_frame: int

    @property
    def bits(self) -> int:
        return self.frames * self.bits_per_frame

    @property
    def ber(self) -> float:
        return self.bit_errors / self.bits if self.bits else 0.0

    @property
    def ser(self) -> float:
        return self.frame_errors / self.frames if self.frames else 0.0

    def __add__(self, other: "FrameErrorCounts") -> "FrameErrorCounts":
        if self.bits_per_frame != other.bits_per_frame:
            raise ValueError("프레임당 비트 수가 다른 집계는 합칠 수 없습니다")
        return FrameErrorCounts(
            bit_errors=self.bit_errors + other.bit_errors,
            frame_errors=self.frame_errors + other.frame_errors,
            frames=self.frames + other.frames,
            bits_per_frame=self.bits_per_frame,
        )

    @classmethod
    def empty(cls, bits_per_frame: int) -> "FrameErrorCounts":
        return cls(bit_errors=0, frame_errors=0, frames=0, bits_per_frame=bits_per_frame)
