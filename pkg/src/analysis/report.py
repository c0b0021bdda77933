"""
Solution reports.

A SolutionReport gathers what the comparison tables need from one solved
scenario cell: invested capacities, hourly metered flows, the lifetime cost
decomposition and the grid operator's revenue.
"""

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional, Tuple, Union

import numpy as np
import pandas as pd

from src.domain.types import EconomicParams
from src.model.instance import ModelInstance
from src.tariffs.costs import hours_above_subscription
from src.tariffs.scarcity import ScarcityFlags
from src.tariffs.schemes import SubscribedCapacityTariff, TariffScheme
from src.solve.result import SolveResult

from .errors import AnalysisError, NotOptimal
from .metrics import duration_curve, dso_revenue, peak_import

NAME_PATTERN = re.compile(r"^(?P<sym>\w+)(?:\[(?P<first>[^\]]+)\])?(?:\[(?P<second>\d+)\])?$")

# hourly column -> (symbol, asset kinds or None for any)
HOURLY_FLOWS: Dict[str, Tuple[str, Optional[Tuple[str, ...]]]] = {
    "grid_import": ("imp", None),
    "battery_grid_charge": ("gb_imp", None),
    "generation": ("gen", None),
    "generation_export": ("gexp", None),
    "battery_charge": ("ch", ("battery",)),
    "battery_discharge": ("dis", ("battery",)),
    "battery_export": ("gb_exp", None),
    "building_battery_export": ("pb_exp", None),
    "electric_heating": ("elin", None),
    "heat_production": ("heat", None),
    "heat_storage_charge": ("ch", ("heat_storage",)),
    "heat_storage_discharge": ("dis", ("heat_storage",)),
    "heating_grid": ("hgd", None),
}


def export_case(limit: Optional[float]) -> str:
    """Cell label of an export option: ``nolimit`` or ``limit100``."""
    return "nolimit" if limit is None else f"limit{limit:g}"


def parse_name(name: str) -> Tuple[str, Optional[str], Optional[int]]:
    """Split ``sym[asset][t]`` into its parts."""
    match = NAME_PATTERN.match(name)
    if match is None:
        raise AnalysisError(f"Unrecognised variable name {name!r}")
    sym, first, second = match.group("sym"), match.group("first"), match.group("second")
    if second is not None:
        return sym, first, int(second)
    if first is not None and first.isdigit():
        return sym, None, int(first)
    return sym, first, None


@dataclass(frozen=True, eq=False)
class SolutionReport:
    """
    Reportable outcome of one scenario cell.

    Attributes:
        label: Cell label, e.g. ``energy_nolimit``
        scheme: Tariff tag
        export_limit: Export cap in kWh/h, None when unconstrained
        fingerprint: Neighborhood fingerprint
        capacities: Asset id -> kW or kWh
        hourly: One row per hour; imports, exports and net_import plus the individual flows
        cost_breakdown: Lifetime-discounted EUR per cost component and reported constant
        dso_revenue_lifetime: Grid operator revenue discounted to the start
        subscribed_capacity: Solved subscription in kW for the subscribed tariff
        objective_value: Solver objective, constants excluded
        epsilon: Lifetime discount factor
        co2_slack: Right-hand side minus activity of the CO2 row, None without the row
        solve_time: Seconds
    """

    label: str
    scheme: str
    export_limit: Optional[float]
    fingerprint: str
    capacities: Dict[str, float]
    hourly: pd.DataFrame
    cost_breakdown: Dict[str, float]
    dso_revenue_lifetime: float
    subscribed_capacity: Optional[float] = None
    objective_value: float = 0.0
    epsilon: float = 1.0
    co2_slack: Optional[float] = None
    solve_time: float = 0.0
    extra: Dict[str, float] = field(default_factory=dict)

    @property
    def case(self) -> str:
        return export_case(self.export_limit)

    @property
    def imports(self) -> np.ndarray:
        return self.hourly["imports"].to_numpy()

    @property
    def exports(self) -> np.ndarray:
        return self.hourly["exports"].to_numpy()

    @property
    def net_imports(self) -> np.ndarray:
        return self.hourly["net_import"].to_numpy()

    @property
    def peak_import(self) -> float:
        return peak_import(self.imports)

    @property
    def duration_curve(self) -> np.ndarray:
        return duration_curve(self.net_imports)

    @property
    def total_cost(self) -> float:
        return float(sum(self.cost_breakdown.values()))

    def summary(self) -> Dict[str, object]:
        """Scalar facts of the report, in a stable order."""
        values: Dict[str, object] = {
            "label": self.label,
            "scheme": self.scheme,
            "export_limit": self.export_limit,
            "fingerprint": self.fingerprint,
            "objective_value": self.objective_value,
            "total_cost": self.total_cost,
            "dso_revenue_lifetime": self.dso_revenue_lifetime,
            "subscribed_capacity": self.subscribed_capacity,
            "peak_import": self.peak_import,
            "total_import": float(self.imports.sum()),
            "total_export": float(self.exports.sum()),
            "epsilon": self.epsilon,
            "co2_slack": self.co2_slack,
        }
        values.update(self.extra)
        return values

    @classmethod
    def from_directory(cls, path: Union[str, Path]) -> "SolutionReport":
        """
        Read a report written by CsvReportLoader.

        Raises:
            AnalysisError: If a report file is missing or malformed
        """
        path = Path(path)
        try:
            summary = pd.read_csv(path / "summary.csv", keep_default_na=False)
            capacities = pd.read_csv(path / "capacities.csv")
            hourly = pd.read_csv(path / "hourly_flows.csv")
            costs = pd.read_csv(path / "cost_breakdown.csv")
        except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
            raise AnalysisError(f"Cannot read report from {path}: {str(e)}") from e

        facts = dict(zip(summary["key"], summary["value"].astype(str)))

        def number(key: str) -> Optional[float]:
            text = facts.get(key, "")
            return None if text in ("", "None", "nan") else float(text)

        known = {
            "label", "scheme", "export_limit", "fingerprint", "objective_value", "total_cost",
            "dso_revenue_lifetime", "subscribed_capacity", "peak_import", "total_import",
            "total_export", "epsilon", "co2_slack",
        }
        return cls(
            label=facts.get("label", path.name),
            scheme=facts["scheme"],
            export_limit=number("export_limit"),
            fingerprint=facts.get("fingerprint", ""),
            capacities=dict(zip(capacities["asset"], capacities["capacity"].astype(float))),
            hourly=hourly.set_index("hour"),
            cost_breakdown=dict(zip(costs["component"], costs["value"].astype(float))),
            dso_revenue_lifetime=number("dso_revenue_lifetime") or 0.0,
            subscribed_capacity=number("subscribed_capacity"),
            objective_value=number("objective_value") or 0.0,
            epsilon=number("epsilon") or 1.0,
            co2_slack=number("co2_slack"),
            extra={k: float(v) for k, v in facts.items() if k not in known and v not in ("", "None")},
        )


def _hourly_frame(model: ModelInstance, values: Dict[str, float], horizon: int) -> pd.DataFrame:
    kinds: Dict[str, str] = model.metadata.get("asset_kinds", {})
    by_symbol: Dict[str, list] = {}
    for name, value in values.items():
        sym, asset, t = parse_name(name)
        if t is not None:
            by_symbol.setdefault(sym, []).append((asset, t, value))

    frame = pd.DataFrame(index=pd.RangeIndex(horizon, name="hour"))
    for column, (sym, allowed) in HOURLY_FLOWS.items():
        series = np.zeros(horizon)
        for asset, t, value in by_symbol.get(sym, ()):
            if allowed is None or kinds.get(asset) in allowed:
                series[t] += value
        frame[column] = series

    frame.insert(0, "imports", _by_hour(by_symbol.get("imp_tot", ()), horizon))
    frame.insert(1, "exports", _by_hour(by_symbol.get("exp_tot", ()), horizon))
    frame.insert(2, "net_import", frame["imports"] - frame["exports"])
    return frame


def _by_hour(entries, horizon: int) -> np.ndarray:
    series = np.zeros(horizon)
    for _, t, value in entries:
        series[t] += value
    return series


def build_report(
    model: ModelInstance,
    result: SolveResult,
    scheme: TariffScheme,
    economic: EconomicParams,
    flags: Optional[ScarcityFlags] = None,
    label: Optional[str] = None,
) -> SolutionReport:
    """
    Report on an optimal solve of a scenario model.

    Args:
        model: The solved model
        result: Optimal solve result
        scheme: Tariff design the model was built with
        economic: Economic parameters of the scenario
        flags: Scarcity flags; rebuilt from the model metadata when omitted
        label: Cell label; derived from scheme and export option when omitted

    Returns:
        SolutionReport: Capacities, flows, costs and revenue

    Raises:
        NotOptimal: If the result is not optimal
    """
    if not result.is_optimal:
        raise NotOptimal(result.status.value)

    horizon = int(model.metadata.get("horizon", 0))
    x = model.vector(result.variable_values)
    values = dict(zip(model.var_names, x.tolist()))

    capacities = {parse_name(name)[1]: values[name] for name in model.symbols.get("x", ())}
    hourly = _hourly_frame(model, values, horizon)
    if "scarcity_hours" in model.metadata:
        flagged = np.zeros(horizon, dtype=bool)
        flagged[np.asarray(model.metadata["scarcity_hours"], dtype=int)] = True
        hourly["scarcity"] = flagged
    if flags is None:
        flags = ScarcityFlags(hourly["scarcity"].to_numpy(), 0.0) if "scarcity" in hourly else ScarcityFlags.none(horizon)

    cost_breakdown = {part: float(vector @ x) for part, vector in model.objective_parts.items()}
    cost_breakdown.update({name: float(value) for name, value in model.constants.items()})

    subscribed = values.get("c_sub")
    if subscribed is not None:
        # solver round-off
        subscribed = max(subscribed, 0.0)
    if isinstance(scheme, SubscribedCapacityTariff) and subscribed is None:
        raise AnalysisError("Subscribed capacity tariff model without c_sub")

    co2_slack = None
    if "co2" in model.row_index:
        row = model.row_index["co2"]
        co2_slack = float(model.rhs[row] - model.activities(x)[row])

    export_limit = model.metadata.get("export_limit")
    extra: Dict[str, float] = {}
    if subscribed is not None:
        extra["hours_above_subscription"] = float(hours_above_subscription(hourly["imports"], subscribed))

    return SolutionReport(
        label=label or f"{scheme.type}_{export_case(export_limit)}",
        scheme=scheme.type,
        export_limit=export_limit,
        fingerprint=str(model.metadata.get("fingerprint", "")),
        capacities=capacities,
        hourly=hourly,
        cost_breakdown=cost_breakdown,
        dso_revenue_lifetime=dso_revenue(
            hourly["imports"].to_numpy(), hourly["exports"].to_numpy(), scheme, flags, subscribed, economic
        ),
        subscribed_capacity=subscribed,
        objective_value=float(result.objective_value),
        epsilon=float(model.metadata.get("epsilon", 1.0)),
        co2_slack=co2_slack,
        solve_time=result.solve_time,
        extra=extra,
    )


def daily_operation(report: SolutionReport, day: int) -> pd.DataFrame:
    """
    The 24 hourly rows of one day of operation.

    Raises:
        ValueError: If the day is outside the horizon
    """
    n_days = len(report.hourly) // 24
    if not 0 <= day < n_days:
        raise ValueError(f"Day must lie in 0..{n_days - 1}, got {day}")
    return report.hourly.iloc[day * 24:(day + 1) * 24]
