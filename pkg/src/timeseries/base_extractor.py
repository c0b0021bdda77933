"""
Base extractor module for hourly series sources.

This module provides a base class for implementing series extractors with
common functionality for horizon checks, unit bookkeeping and logging.
"""

from abc import ABC, abstractmethod
from typing import Dict, List

import numpy as np
from airflow.utils.log.logging_mixin import LoggingMixin

from .errors import HorizonMismatch, NegativeLoad
from .series import HOURS_PER_YEAR, NON_NEGATIVE_UNITS, TimeSeriesSet


class BaseSeriesExtractor(ABC, LoggingMixin):
    """Base class for reading a TimeSeriesSet out of some source."""

    def __init__(self, horizon: int = HOURS_PER_YEAR):
        """
        Initialize the extractor.

        Args:
            horizon: Number of hourly values each series must hold
        """
        self.horizon = horizon
        super().__init__()

    @abstractmethod
    def extract(self) -> TimeSeriesSet:
        """
        Extract the series from the source.

        Returns:
            TimeSeriesSet: Fully populated series set
        """
        pass

    def _check_horizon(self, n_rows: int) -> None:
        if n_rows != self.horizon:
            self.log.error(f"Series source has {n_rows} rows, expected {self.horizon}")
            raise HorizonMismatch(n_rows, self.horizon)

    def _check_sign(self, series: Dict[str, np.ndarray], units: Dict[str, str]) -> None:
        """
        Reject negative values in series whose unit is a non-negative quantity.

        Raises:
            NegativeLoad: For the first offending series, listing every bad row
        """
        for series_id, values in series.items():
            if units[series_id] not in NON_NEGATIVE_UNITS:
                continue
            bad_rows: List[int] = np.flatnonzero(values < 0).tolist()
            if bad_rows:
                self.log.error(f"{len(bad_rows)} negative values in {series_id}")
                raise NegativeLoad(series_id, bad_rows)

    def _log_extraction_summary(self, ts: TimeSeriesSet, source: str) -> None:
        self.log.info(
            f"Extraction completed from {source}:\n"
            f"- Series: {len(ts)}\n"
            f"- Horizon: {ts.horizon} h"
        )
