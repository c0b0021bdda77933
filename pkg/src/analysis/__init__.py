from .base_report_loader import BaseReportLoader
from .csv_report_loader import CsvReportLoader
from .errors import AnalysisError, MismatchedScenarios, NotOptimal
from .metrics import duration_curve, dso_revenue, peak_import
from .report import SolutionReport, build_report, daily_operation, export_case, parse_name
from .tables import (
    baseline_of,
    cost_change_table,
    cost_revenue_table,
    investment_delta_table,
    max_import_table,
    split_asset,
    split_label,
)

__all__ = [
    "AnalysisError",
    "BaseReportLoader",
    "CsvReportLoader",
    "MismatchedScenarios",
    "NotOptimal",
    "SolutionReport",
    "baseline_of",
    "build_report",
    "cost_change_table",
    "cost_revenue_table",
    "daily_operation",
    "dso_revenue",
    "duration_curve",
    "export_case",
    "investment_delta_table",
    "max_import_table",
    "parse_name",
    "peak_import",
    "split_asset",
    "split_label",
]
