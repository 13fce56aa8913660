import json

import pytest

from src.core.exceptions import InvalidInputError
from src.models.evaluation import BerCurve, BerRow
from src.services.evaluation import (
    compare_curves,
    write_comparison_csv,
    write_comparison_json,
    write_curve_csv,
    write_curve_json,
)


def _curve(label: str, bers: list[float], grid: list[float] | None = None) -> BerCurve:
    grid = grid or [0.0, 5.0, 10.0][: len(bers)]
    frames = 100_000
    rows = [
        BerRow(
            ebn0_db=ebn0_db, snr_db=ebn0_db, ber=ber, ser=ber, frames=frames,
            bit_errors=round(ber * frames), frame_errors=round(ber * frames),
            ber_low=0.0, ber_high=min(1.0, 2 * ber + 1e-5),
        )
        for ebn0_db, ber in zip(grid, bers)
    ]
    return BerCurve(label=label, n_s=1, config_hash="abc", seed=1, channel_set_id="eval-s1-n4", rows=rows)


def test_curve_compared_to_itself():
    curve = _curve("dae", [1e-1, 1e-2, 1e-3])
    comparison = compare_curves(curve, _curve("copy", [1e-1, 1e-2, 1e-3]))
    assert comparison.min_ratio["copy"] == pytest.approx(1.0)
    assert comparison.max_ratio["copy"] == pytest.approx(1.0)


def test_uniformly_better_candidate():
    candidate = _curve("dae", [1e-2, 1e-3, 1e-4])
    other = _curve("plain", [1e-1, 1e-2, 1e-3])
    comparison = compare_curves(candidate, other)
    assert comparison.candidate == "dae"
    assert comparison.min_ratio["plain"] == pytest.approx(10.0)
    assert comparison.max_ratio["plain"] == pytest.approx(10.0)


def test_zero_candidate_ber_has_no_ratio():
    comparison = compare_curves(_curve("dae", [1e-2, 0.0]), _curve("plain", [1e-1, 1e-3]))
    assert comparison.points[1].ratios["plain"] is None
    assert comparison.max_ratio["plain"] == pytest.approx(10.0)


def test_mismatched_grids_and_labels():
    with pytest.raises(InvalidInputError):
        compare_curves(_curve("a", [0.1, 0.1]), _curve("b", [0.1, 0.1], grid=[0.0, 2.5]))
    with pytest.raises(InvalidInputError):
        compare_curves(_curve("a", [0.1]), _curve("a", [0.1]))
    with pytest.raises(InvalidInputError):
        compare_curves()


def test_snr_offset_is_validated():
    row = BerRow(ebn0_db=0.0, snr_db=0.0, ber=0.0, ser=0.0, frames=10, bit_errors=0, frame_errors=0, ber_low=0.0, ber_high=0.3)
    with pytest.raises(ValueError):
        BerCurve(label="x", n_s=4, config_hash="", seed=1, channel_set_id="", rows=[row])


def test_written_artifacts(tmp_path):
    candidate = _curve("dae", [1e-2, 1e-3])
    other = _curve("baseline", [2e-2, 4e-3])
    comparison = compare_curves(candidate, other)

    lines = write_curve_csv(candidate, tmp_path / "curve.csv").read_text().splitlines()
    assert lines[0] == "# config_hash=abc seed=1 channel_set=eval-s1-n4"
    assert lines[1] == "ebn0_db,snr_db,ber,ser,frames,bit_errors"
    assert len(lines) == 4

    restored = BerCurve.model_validate_json(write_curve_json(candidate, tmp_path / "curve.json").read_text())
    assert restored == candidate

    header = write_comparison_csv([candidate, other], comparison, tmp_path / "cmp.csv").read_text().splitlines()[1]
    assert header.split(",")[-1] == "baseline_ratio"

    payload = json.loads(write_comparison_json([candidate, other], comparison, tmp_path / "cmp.json").read_text())
    assert payload["comparison"]["max_ratio"]["baseline"] == pytest.approx(4.0)
    assert payload["metadata"]["dae"]["channel_set"] == "eval-s1-n4"
