"""src.services.channel.link_budget
SNR / Eb/N0 / N0 dB 변환

SNR = P / N0 = N_s · Eb / N0,  Eb = P / N_s
"""
import math
from dataclasses import dataclass
from enum import Enum

from src.core.exceptions import InvalidInputError


class LinkUnit(str, Enum):
    """변환 가능한 dB 단위"""
    N0_DB = "n0_db"
    SNR_DB = "snr_db"
    EBN0_DB = "ebn0_db"


def _db(value: float) -> float:
    return 10.0 * math.log10(value)


def _validate(power: float, n_s: int) -> None:
    if not power > 0:
        raise InvalidInputError(f"송신 전력 P는 양수여야 합니다: {power}")
    if n_s < 1:
        raise InvalidInputError(f"N_s는 1 이상이어야 합니다: {n_s}")


@dataclass(frozen=True)
class LinkBudget:
    """총 송신 전력 P, 전송당 비트 수 N_s, 잡음 전력 N0 (모두 선형)"""
    power: float
    n_s: int
    noise_power: float

    def __post_init__(self):
        _validate(self.power, self.n_s)
        if not self.noise_power > 0:
            raise InvalidInputError(f"잡음 전력 N0는 양수여야 합니다: {self.noise_power}")

    @property
    def snr(self) -> float:
        return self.power / self.noise_power

    @property
    def energy_per_bit(self) -> float:
        return self.power / self.n_s

    @property
    def ebn0(self) -> float:
        return self.snr / self.n_s


def convert_link(power: float, n_s: int, value: float, from_unit: LinkUnit | str, to_unit: LinkUnit | str) -> float:
    """
    N0 / SNR / Eb/N0 dB 값 사이의 변환

    Args:
        power: 총 송신 전력 P (W, > 0)
        n_s: 전송당 비트 수 (≥ 1)
        value: 변환할 dB 값
        from_unit: 입력 단위
        to_unit: 출력 단위

    Returns:
        float: 변환된 dB 값

    Examples:
        >>> round(convert_link(20, 4, -20, "n0_db", "ebn0_db"))
        27
    """
    _validate(power, n_s)
    from_unit, to_unit = LinkUnit(from_unit), LinkUnit(to_unit)
    power_db = _db(power)
    bits_db = _db(n_s)

    if from_unit is LinkUnit.N0_DB:
        n0_db = value
    elif from_unit is LinkUnit.SNR_DB:
        n0_db = power_db - value
    else:
        n0_db = power_db - (value + bits_db)

    if to_unit is LinkUnit.N0_DB:
        return n0_db
    snr_db = power_db - n0_db
    if to_unit is LinkUnit.SNR_DB:
        return snr_db
    return snr_db - bits_db


def n0_from_ebn0_db(power: float, n_s: int, ebn0_db: float) -> float:
    """Eb/N0 (dB) 에 대응하는 선형 잡음 전력 N0"""
    return 10.0 ** (convert_link(power, n_s, ebn0_db, LinkUnit.EBN0_DB, LinkUnit.N0_DB) / 10.0)
