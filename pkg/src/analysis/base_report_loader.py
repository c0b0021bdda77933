"""
Base abstract class for report loaders.

This module provides the base interface for persisting solution reports and
comparison tables with common logging functionality.
"""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Union

import pandas as pd
from airflow.utils.log.logging_mixin import LoggingMixin

from .report import SolutionReport


class BaseReportLoader(LoggingMixin, ABC):
    """
    Abstract base class for report loaders.

    Provides a common interface for writing one scenario cell's report and the
    combined tables of a tariff comparison.
    """

    @abstractmethod
    def load(self, report: SolutionReport, target: Union[str, Path]) -> Path:
        """
        Persist one solution report.

        Args:
            report: Report of a solved cell
            target: Destination of the report

        Returns:
            Path: Where the report was written
        """
        pass

    @abstractmethod
    def load_table(self, name: str, table: pd.DataFrame, target: Union[str, Path]) -> Path:
        """
        Persist one comparison table.

        Args:
            name: Table name, e.g. ``max_import``
            table: Table to write
            target: Destination of the table

        Returns:
            Path: Where the table was written
        """
        pass
