"""Exceptions raised while ingesting hourly series."""

from typing import Sequence


class TimeSeriesError(Exception):
    """Base exception for time-series errors."""

    pass


class HorizonMismatch(TimeSeriesError):
    """A series or file does not cover the expected number of hours."""

    def __init__(self, n_rows: int, expected: int = 8760, series_id: str = ""):
        self.n_rows = n_rows
        self.expected = expected
        self.series_id = series_id
        where = f" for {series_id}" if series_id else ""
        super().__init__(f"Expected {expected} hourly values{where}, got {n_rows}")


class UnparseableValue(TimeSeriesError):
    """A cell could not be read as a decimal-point real."""

    def __init__(self, row: int, column: str, value: str):
        self.row = row
        self.column = column
        self.value = value
        super().__init__(f"Unparseable value {value!r} at row {row}, column {column}")


class MissingColumn(TimeSeriesError):
    def __init__(self, series_id: str, column: str):
        self.series_id = series_id
        self.column = column
        super().__init__(f"Missing column {column!r} for series {series_id}")


class NegativeLoad(TimeSeriesError):
    """A series that must be non-negative (loads, insolation) has negative values."""

    def __init__(self, series_id: str, rows: Sequence[int]):
        self.series_id = series_id
        self.rows = list(rows)
        self.row = self.rows[0]
        super().__init__(
            f"Negative values in {series_id} at row {self.row}"
            + (f" (and {len(self.rows) - 1} more)" if len(self.rows) > 1 else "")
        )


class MixedUnits(TimeSeriesError):
    def __init__(self, series_id: str, units: Sequence[str]):
        self.series_id = series_id
        self.units = list(units)
        super().__init__(f"Series {series_id} declared with conflicting units {self.units}")


class UnknownUnit(TimeSeriesError):
    def __init__(self, series_id: str, unit: str):
        self.series_id = series_id
        self.unit = unit
        super().__init__(f"Unknown unit {unit!r} for series {series_id}")
