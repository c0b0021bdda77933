"""
Unit tests for CSV series ingestion.

Files are written to pytest's tmp_path; the horizon is kept short.
"""

import numpy as np
import pytest

from src.timeseries.csv_extractor import CsvSeriesExtractor, SeriesColumn, load_series_csv, write_series_csv
from src.timeseries.errors import HorizonMismatch, MissingColumn, MixedUnits, NegativeLoad, UnparseableValue
from src.timeseries.synthetic import series_manifest, synthetic_year

HORIZON = 24


@pytest.fixture
def csv_file(tmp_path):
    """
    Write a CSV file from rows of text.

    Returns:
        Callable taking a header line and data lines, returning the path.
    """

    def _write(header, rows):
        path = tmp_path / "series.csv"
        path.write_text("\n".join([header, *rows]) + "\n", encoding="utf-8")
        return path

    return _write


def test_happy_path(csv_file):
    path = csv_file("spot_price [EUR/kWh],apt_el", [f"0.04,{h}.5" for h in range(HORIZON)])

    ts = load_series_csv(path, {"spot_price": "spot_price", "apt_el": "apt_el"}, HORIZON)

    assert ts.horizon == HORIZON
    assert len(ts["apt_el"]) == HORIZON
    assert ts["apt_el"][3] == 3.5
    assert ts.unit("spot_price") == "EUR/kWh"
    assert ts.unit("apt_el") == "kWh/h"


def test_short_file_is_a_horizon_mismatch(csv_file):
    path = csv_file("apt_el", ["1.0"] * (HORIZON - 1))

    with pytest.raises(HorizonMismatch) as exc_info:
        load_series_csv(path, {"apt_el": "apt_el"}, HORIZON)
    assert exc_info.value.n_rows == HORIZON - 1


def test_decimal_comma_is_unparseable(csv_file):
    rows = ["1.0"] * HORIZON
    rows[5] = '"0,5"'
    path = csv_file("apt_el", rows)

    with pytest.raises(UnparseableValue) as exc_info:
        load_series_csv(path, {"apt_el": "apt_el"}, HORIZON)
    assert exc_info.value.row == 5
    assert exc_info.value.column == "apt_el"


def test_missing_column(csv_file):
    path = csv_file("apt_el", ["1.0"] * HORIZON)

    with pytest.raises(MissingColumn) as exc_info:
        load_series_csv(path, {"apt_heat": "apt_heat"}, HORIZON)
    assert exc_info.value.series_id == "apt_heat"


def test_negative_load(csv_file):
    rows = ["1.0"] * HORIZON
    rows[7] = "-1"
    path = csv_file("apt_el", rows)

    with pytest.raises(NegativeLoad) as exc_info:
        load_series_csv(path, {"apt_el": "apt_el"}, HORIZON)
    assert exc_info.value.row == 7


def test_negative_spot_price_is_allowed(csv_file):
    path = csv_file("spot_price [EUR/kWh]", ["-0.01"] * HORIZON)

    ts = load_series_csv(path, {"spot_price": "spot_price"}, HORIZON)

    assert ts["spot_price"].min() == -0.01


def test_conflicting_units_are_rejected(csv_file):
    path = csv_file("spot_price [EUR/kWh]", ["0.04"] * HORIZON)

    with pytest.raises(MixedUnits):
        CsvSeriesExtractor(path, {"spot_price": SeriesColumn(column="spot_price", unit="MW")}, HORIZON).extract()


def test_unit_aliases_are_normalized(csv_file):
    path = csv_file("outdoor_temperature [degC]", ["-3.5"] * HORIZON)

    ts = load_series_csv(path, {"outdoor_temperature": "outdoor_temperature"}, HORIZON)

    assert ts.unit("outdoor_temperature") == "°C"


def test_round_trip_is_bit_exact(tmp_path):
    ts = synthetic_year(HORIZON * 3, {"apt": (10.0, 1.0, 1.0)}, seed=3)
    path = tmp_path / "roundtrip.csv"

    write_series_csv(ts, path)
    again = load_series_csv(path, series_manifest(["apt"]), ts.horizon)

    for series_id in ts:
        assert np.array_equal(again[series_id], ts[series_id])
        assert again.unit(series_id) == ts.unit(series_id)
