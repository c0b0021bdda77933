"""
CSV extractor for hourly series.

Files are comma-separated with a header row of series ids, one row per hour,
decimal-point reals and no thousands separators. A header may carry a unit tag
in brackets, e.g. ``spot_price [EUR/kWh]``.
"""

import re
from pathlib import Path
from typing import Dict, Mapping, Optional, Tuple, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict

from .base_extractor import BaseSeriesExtractor
from .errors import MissingColumn, MixedUnits, TimeSeriesError, UnparseableValue
from .series import HOURS_PER_YEAR, TimeSeriesSet, default_unit, normalize_unit

HEADER_PATTERN = re.compile(r"^\s*(?P<name>[^\[\]]+?)\s*(\[(?P<unit>[^\]]+)\])?\s*$")


class SeriesColumn(BaseModel):
    """Where a series lives in the CSV file and which unit it is declared in."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    column: str
    unit: Optional[str] = None


Manifest = Mapping[str, Union[str, SeriesColumn]]


def _parse_real(text: str) -> float:
    """Strict decimal-point real; Python's float() is correctly rounded."""
    if "_" in text or "," in text:
        raise ValueError(text)
    value = float(text)
    if not np.isfinite(value):
        raise ValueError(text)
    return value


def _split_header(header: str) -> Tuple[str, Optional[str]]:
    match = HEADER_PATTERN.match(header)
    if match is None:
        return header.strip(), None
    return match.group("name"), match.group("unit")


class CsvSeriesExtractor(BaseSeriesExtractor):
    """
    Reads a TimeSeriesSet from one CSV file.

    Attributes:
        path: CSV file to read
        manifest: Mapping from series id to CSV column (and optional unit)
    """

    def __init__(self, path: Union[str, Path], manifest: Manifest, horizon: int = HOURS_PER_YEAR):
        super().__init__(horizon)
        self.path = Path(path)
        self.manifest = {
            series_id: spec if isinstance(spec, SeriesColumn) else SeriesColumn(column=spec)
            for series_id, spec in manifest.items()
        }

    def extract(self) -> TimeSeriesSet:
        """
        Read, parse and check every series named in the manifest.

        Returns:
            TimeSeriesSet: Series with exactly ``horizon`` values each

        Raises:
            HorizonMismatch: If the row count differs from the horizon
            MissingColumn: If a manifest column is absent from the header
            UnparseableValue: If a cell is not a decimal-point real
            NegativeLoad: If a non-negative quantity has negative values
            MixedUnits: If the header and the manifest disagree on a unit
        """
        self.log.info(f"Starting series extraction from: {self.path}")

        try:
            raw = pd.read_csv(self.path, dtype=str, keep_default_na=False)
        except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
            error_msg = f"Cannot read series file {self.path}: {str(e)}"
            self.log.error(error_msg)
            raise TimeSeriesError(error_msg) from e

        self._check_horizon(len(raw))

        header_units: Dict[str, Optional[str]] = {}
        header_columns: Dict[str, str] = {}
        for header in raw.columns:
            name, unit = _split_header(header)
            header_columns[name] = header
            header_units[name] = unit

        series: Dict[str, np.ndarray] = {}
        units: Dict[str, str] = {}
        for series_id, spec in self.manifest.items():
            if spec.column not in header_columns:
                raise MissingColumn(series_id, spec.column)
            units[series_id] = self._resolve_unit(series_id, spec, header_units[spec.column])
            series[series_id] = self._parse_column(raw[header_columns[spec.column]], spec.column)

        self._check_sign(series, units)

        ts = TimeSeriesSet(series, units, self.horizon)
        self._log_extraction_summary(ts, str(self.path))
        return ts

    def _resolve_unit(self, series_id: str, spec: SeriesColumn, header_unit: Optional[str]) -> str:
        declared = [normalize_unit(series_id, u) for u in (spec.unit, header_unit) if u]
        if len(set(declared)) > 1:
            raise MixedUnits(series_id, declared)
        return declared[0] if declared else default_unit(series_id)

    def _parse_column(self, column: pd.Series, name: str) -> np.ndarray:
        values = np.empty(len(column), dtype=float)
        for row, text in enumerate(column.tolist()):
            try:
                values[row] = _parse_real(text)
            except ValueError as e:
                self.log.error(f"Unparseable value {text!r} in column {name} at row {row}")
                raise UnparseableValue(row, name, text) from e
        return values


def load_series_csv(
    path: Union[str, Path], manifest: Manifest, horizon: int = HOURS_PER_YEAR
) -> TimeSeriesSet:
    """Read a TimeSeriesSet from a CSV file; see CsvSeriesExtractor.extract."""
    return CsvSeriesExtractor(path, manifest, horizon).extract()


def write_series_csv(ts: TimeSeriesSet, path: Union[str, Path]) -> None:
    """
    Write a TimeSeriesSet so that load_series_csv reproduces it bit-exactly.

    Headers carry the unit tag; reals use 17 significant digits.
    """
    frame = ts.to_frame()
    frame.columns = [f"{series_id} [{ts.unit(series_id)}]" for series_id in frame.columns]
    frame.to_csv(path, index=False, float_format="%.17g", encoding="utf-8")
