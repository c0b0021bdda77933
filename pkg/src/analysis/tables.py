"""
Comparison tables across scenario cells.

Every table takes a mapping from cell label (``<scheme>_<case>``, e.g.
``tou_limit100``) to either a SolutionReport or, for a cell that did not
solve, its status text. Failed cells show up in the tables with that text
instead of numbers.
"""

from typing import Dict, List, Mapping, Optional, Tuple, Union

import numpy as np
import pandas as pd

from src.model.zen import COST_PARTS

from .errors import MismatchedScenarios
from .report import SolutionReport

Cell = Union[SolutionReport, str]


def split_label(label: str) -> Tuple[str, str]:
    """``tou_limit100`` -> (``tou``, ``limit100``)."""
    scheme, _, case = label.partition("_")
    return scheme, case


def split_asset(asset: str) -> Tuple[str, str]:
    """``pv@offices`` -> (``pv``, ``offices``); plant assets map to ``plant``."""
    tech, _, location = asset.partition("@")
    return tech, location or "plant"


def _check_scenarios(reports: Mapping[str, Cell], baseline: SolutionReport) -> None:
    for label, report in reports.items():
        if isinstance(report, SolutionReport) and report.fingerprint != baseline.fingerprint:
            raise MismatchedScenarios(label, report.fingerprint, baseline.fingerprint)


def investment_delta_table(reports: Mapping[str, Cell], baseline: SolutionReport) -> pd.DataFrame:
    """
    Capacities of every cell side by side with the baseline.

    One row per asset with its technology and location, the baseline capacity,
    and for each cell its capacity and the change against the baseline. An asset
    absent from a cell counts as zero capacity there.

    Args:
        reports: Cell label -> report or failure status
        baseline: Reference report, usually the Energy tariff cell

    Returns:
        pd.DataFrame: Indexed by asset

    Raises:
        MismatchedScenarios: If a report was built from a different neighborhood
    """
    _check_scenarios(reports, baseline)

    assets: List[str] = list(baseline.capacities)
    for report in reports.values():
        if isinstance(report, SolutionReport):
            assets.extend(a for a in report.capacities if a not in assets)

    table = pd.DataFrame(index=pd.Index(assets, name="asset"))
    table["technology"] = [split_asset(a)[0] for a in assets]
    table["location"] = [split_asset(a)[1] for a in assets]
    base = np.array([baseline.capacities.get(a, 0.0) for a in assets])
    table[baseline.label] = base

    for label, report in reports.items():
        if label == baseline.label:
            continue
        if isinstance(report, SolutionReport):
            values = np.array([report.capacities.get(a, 0.0) for a in assets])
            table[label] = values
            table[f"{label}_delta"] = values - base
        else:
            table[label] = report
            table[f"{label}_delta"] = report
    return table


def max_import_table(reports: Mapping[str, Cell]) -> pd.DataFrame:
    """Peak hourly import per tariff (rows) and export case (columns)."""
    schemes: List[str] = []
    cases: List[str] = []
    values: Dict[Tuple[str, str], object] = {}
    for label, report in reports.items():
        scheme, case = split_label(label)
        schemes += [scheme] if scheme not in schemes else []
        cases += [case] if case not in cases else []
        values[(scheme, case)] = report.peak_import if isinstance(report, SolutionReport) else report

    table = pd.DataFrame(
        [[values.get((s, c), np.nan) for c in cases] for s in schemes],
        index=pd.Index(schemes, name="scheme"),
        columns=cases,
    )
    return table


def cost_revenue_table(reports: Mapping[str, Cell]) -> pd.DataFrame:
    """
    Lifetime-discounted cost per component and grid operator revenue per cell.

    Failed cells keep their status and leave the numbers empty.
    """
    rows = []
    for label, report in reports.items():
        scheme, case = split_label(label)
        row: Dict[str, object] = {"label": label, "scheme": scheme, "case": case}
        if isinstance(report, SolutionReport):
            row["status"] = "optimal"
            row.update({part: report.cost_breakdown.get(part, 0.0) for part in COST_PARTS})
            row["total_cost"] = report.total_cost
            row["dso_revenue_lifetime"] = report.dso_revenue_lifetime
            row["subscribed_capacity"] = report.subscribed_capacity
        else:
            row["status"] = report
        rows.append(row)

    columns = ["label", "scheme", "case", "status", *COST_PARTS, "total_cost", "dso_revenue_lifetime", "subscribed_capacity"]
    return pd.DataFrame(rows, columns=columns).set_index("label")


def cost_change_table(reports: Mapping[str, Cell], baseline: SolutionReport) -> pd.DataFrame:
    """
    Relative change of total cost against the baseline cell.

    Raises:
        MismatchedScenarios: If a report was built from a different neighborhood
    """
    _check_scenarios(reports, baseline)
    base = baseline.total_cost

    rows = []
    for label, report in reports.items():
        row: Dict[str, object] = {"label": label}
        if isinstance(report, SolutionReport):
            row["total_cost"] = report.total_cost
            row["change"] = (report.total_cost - base) / base if base else np.nan
        else:
            row["total_cost"] = report
            row["change"] = report
        rows.append(row)
    return pd.DataFrame(rows, columns=["label", "total_cost", "change"]).set_index("label")


def baseline_of(reports: Mapping[str, Cell], scheme: str = "energy", case: Optional[str] = None) -> Optional[SolutionReport]:
    """First solved report of ``scheme``, in ``case`` when given."""
    for label, report in reports.items():
        s, c = split_label(label)
        if s == scheme and (case is None or c == case) and isinstance(report, SolutionReport):
            return report
    return None
