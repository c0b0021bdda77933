"""
CSV report loader.

A cell directory holds capacities.csv, hourly_flows.csv, duration_curve.csv,
cost_breakdown.csv and summary.csv. Reals are written with ``%.12g`` and the
solve time is left out, so identical solves give byte-identical files.
"""

from pathlib import Path
from typing import Union

import pandas as pd

from .base_report_loader import BaseReportLoader
from .errors import AnalysisError
from .report import SolutionReport

FLOAT_FORMAT = "%.12g"


class CsvReportLoader(BaseReportLoader):
    """Writes reports and tables as comma-separated files."""

    def __init__(self, float_format: str = FLOAT_FORMAT):
        super().__init__()
        self.float_format = float_format

    def _write(self, frame: pd.DataFrame, path: Path, index: bool = False) -> None:
        try:
            frame.to_csv(path, index=index, float_format=self.float_format, lineterminator="\n")
        except OSError as e:
            self.log.error(f"Error writing {path}: {str(e)}")
            raise AnalysisError(f"Cannot write {path}: {str(e)}") from e

    def load(self, report: SolutionReport, target: Union[str, Path]) -> Path:
        """
        Write the report files of one cell into ``target``.

        Raises:
            AnalysisError: If a file cannot be written
        """
        out_dir = Path(target)
        try:
            out_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            self.log.error(f"Error creating {out_dir}: {str(e)}")
            raise AnalysisError(f"Cannot create {out_dir}: {str(e)}") from e

        capacities = pd.DataFrame(
            {"asset": list(report.capacities), "capacity": list(report.capacities.values())}
        )
        curve = pd.DataFrame(
            {"rank": range(len(report.duration_curve)), "net_import": report.duration_curve}
        )
        costs = pd.DataFrame(
            {"component": list(report.cost_breakdown), "value": list(report.cost_breakdown.values())}
        )
        summary = pd.DataFrame(
            {
                "key": list(report.summary()),
                "value": ["" if v is None else v for v in report.summary().values()],
            }
        )

        self._write(capacities, out_dir / "capacities.csv")
        self._write(report.hourly, out_dir / "hourly_flows.csv", index=True)
        self._write(curve, out_dir / "duration_curve.csv")
        self._write(costs, out_dir / "cost_breakdown.csv")
        self._write(summary, out_dir / "summary.csv")

        self.log.info(f"Report {report.label} written to {out_dir}")
        return out_dir

    def load_table(self, name: str, table: pd.DataFrame, target: Union[str, Path]) -> Path:
        """Write ``<name>.csv`` into ``target``."""
        out_dir = Path(target)
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / f"{name}.csv"
        self._write(table, path, index=True)
        self.log.info(f"Table {name} written to {path}")
        return path
