"""src.services.evaluation.comparison
BER 곡선 비교 리포트와 CSV / JSON 산출물 기록
"""
import csv
import io
import json
import logging
from pathlib import Path

from src.core.exceptions import InvalidInputError
from src.models.evaluation import BerCurve, ComparisonPoint, CurveComparison
from src.utils.common import atomic_write_text

logger = logging.getLogger(__name__)

CURVE_COLUMNS = ("ebn0_db", "snr_db", "ber", "ser", "frames", "bit_errors")


def compare_curves(*curves: BerCurve) -> CurveComparison:
    """
    첫 번째 곡선을 기준으로 격자점별 BER 비 (상대 BER / 기준 BER) 를 계산합니다.

    기준 BER이 0인 점의 비율은 None 이며 min/max 요약에서 제외됩니다.

    Raises:
        InvalidInputError: 곡선이 없거나 격자가 다른 경우
    """
    if not curves:
        raise InvalidInputError("비교할 곡선이 없습니다")
    candidate, others = curves[0], curves[1:]
    for other in others:
        if other.grid != candidate.grid:
            raise InvalidInputError(f"격자가 다른 곡선은 비교할 수 없습니다: {candidate.label} vs {other.label}")

    labels = [other.label for other in others]
    if len(set(labels + [candidate.label])) != len(curves):
        raise InvalidInputError(f"곡선 이름이 중복됩니다: {[candidate.label] + labels}")

    points = []
    for index, row in enumerate(candidate.rows):
        ratios = {
            other.label: (other.rows[index].ber / row.ber if row.ber > 0 else None)
            for other in others
        }
        points.append(ComparisonPoint(ebn0_db=row.ebn0_db, ratios=ratios))

    min_ratio, max_ratio = {}, {}
    for label in labels:
        values = [point.ratios[label] for point in points if point.ratios[label] is not None]
        min_ratio[label] = min(values) if values else None
        max_ratio[label] = max(values) if values else None
        logger.info(f"{label} / {candidate.label}: min={min_ratio[label]}, max={max_ratio[label]}")

    return CurveComparison(candidate=candidate.label, points=points, min_ratio=min_ratio, max_ratio=max_ratio)


# =============================================
# 산출물 기록
# =============================================
def _metadata_line(curve: BerCurve) -> str:
    return f"# config_hash={curve.config_hash} seed={curve.seed} channel_set={curve.channel_set_id}\n"


def write_curve_csv(curve: BerCurve, path: Path) -> Path:
    """ebn0_db,snr_db,ber,ser,frames,bit_errors (첫 줄은 메타데이터 주석)"""
    buffer = io.StringIO()
    buffer.write(_metadata_line(curve))
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CURVE_COLUMNS)
    for row in curve.rows:
        writer.writerow([repr(row.ebn0_db), repr(row.snr_db), repr(row.ber), repr(row.ser), row.frames, row.bit_errors])
    atomic_write_text(path, buffer.getvalue())
    return path


def write_curve_json(curve: BerCurve, path: Path) -> Path:
    """곡선 전체 (신뢰구간, 프레임 오류 수 포함)"""
    atomic_write_text(path, curve.model_dump_json(indent=2) + "\n")
    return path


def write_comparison_csv(curves: list[BerCurve], comparison: CurveComparison, path: Path) -> Path:
    """격자점별 곡선 BER, 95% 구간, 기준 대비 비율을 나란히 기록"""
    if not curves:
        raise InvalidInputError("비교할 곡선이 없습니다")
    candidate = curves[0]
    header = ["ebn0_db", "snr_db"]
    for curve in curves:
        header += [f"{curve.label}_ber", f"{curve.label}_ber_low", f"{curve.label}_ber_high"]
    header += [f"{label}_ratio" for label in comparison.min_ratio]

    buffer = io.StringIO()
    buffer.write(_metadata_line(candidate))
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for index, point in enumerate(comparison.points):
        line = [repr(point.ebn0_db), repr(candidate.rows[index].snr_db)]
        for curve in curves:
            row = curve.rows[index]
            line += [repr(row.ber), repr(row.ber_low), repr(row.ber_high)]
        line += ["" if point.ratios[label] is None else repr(point.ratios[label]) for label in comparison.min_ratio]
        writer.writerow(line)
    atomic_write_text(path, buffer.getvalue())
    return path


def write_comparison_json(curves: list[BerCurve], comparison: CurveComparison, path: Path) -> Path:
    """요약 (min/max 비율) + 곡선별 메타데이터"""
    payload = {
        "metadata": {
            curve.label: {
                "config_hash": curve.config_hash,
                "seed": curve.seed,
                "channel_set": curve.channel_set_id,
            }
            for curve in curves
        },
        "comparison": comparison.model_dump(mode="json"),
    }
    atomic_write_text(path, json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
    return path
