"""Tests for solution reports and the CSV report loader."""

import numpy as np
import pandas as pd
import pytest

from src.analysis.csv_report_loader import CsvReportLoader
from src.analysis.errors import AnalysisError, NotOptimal
from src.analysis.report import SolutionReport, build_report, daily_operation, export_case, parse_name
from src.model.zen import ModelOptions, build_model
from src.solve.result import SolveResult, SolveStatus
from src.solve.solver import solve
from src.tariffs.schemes import EnergyTariff, SubscribedCapacityTariff

HORIZON = 48


@pytest.fixture
def solved(make_spec, make_series, pv_tech, battery_tech):
    """
    Factory solving a PV and battery neighborhood over two sunny days.

    Returns:
        Callable taking the tariff scheme, returning (model, result, spec).
    """

    def _solve(scheme, options=None):
        hours = np.arange(HORIZON) % 24
        series = make_series(insolation=np.where((hours >= 6) & (hours < 18), 1.0, 0.0))
        spec = make_spec([pv_tech, battery_tech], retailer=0.005)
        model = build_model(spec, series, scheme, options or ModelOptions())
        return model, solve(model, "scipy"), spec

    return _solve


def test_parse_name():
    assert parse_name("soc[bat@apt][17]") == ("soc", "bat@apt", 17)
    assert parse_name("imp_tot[3]") == ("imp_tot", None, 3)
    assert parse_name("x[pv@apt]") == ("x", "pv@apt", None)
    assert parse_name("c_sub") == ("c_sub", None, None)
    with pytest.raises(AnalysisError):
        parse_name("bad name")


def test_export_case():
    assert export_case(None) == "nolimit"
    assert export_case(100.0) == "limit100"
    assert export_case(12.5) == "limit12.5"


def test_report_contents(solved):
    model, result, spec = solved(EnergyTariff())
    report = build_report(model, result, EnergyTariff(), spec.economic)

    assert report.label == "energy_nolimit"
    assert set(report.capacities) == {"pv@apt", "bat@apt"}
    assert len(report.hourly) == HORIZON
    np.testing.assert_allclose(report.net_imports, report.imports - report.exports)
    assert report.peak_import == pytest.approx(report.imports.max())
    assert report.co2_slack >= -1e-7
    assert report.subscribed_capacity is None
    assert report.cost_breakdown["tariff_fixed"] == pytest.approx(137.0 / report.epsilon)


def test_cost_breakdown_sums_to_objective(solved):
    model, result, spec = solved(EnergyTariff())
    report = build_report(model, result, EnergyTariff(), spec.economic)
    assert report.total_cost == pytest.approx(result.objective_value + model.objective_constant, rel=1e-6)


def test_expost_revenue_matches_tariff_share(solved):
    scheme = SubscribedCapacityTariff()
    model, result, spec = solved(scheme)
    report = build_report(model, result, scheme, spec.economic)
    tariff_share = report.cost_breakdown["tariff"] * report.epsilon
    # revenue is annual cost times epsilon, the objective share is annual cost over epsilon
    assert report.dso_revenue_lifetime / report.epsilon == pytest.approx(tariff_share, rel=1e-6)
    assert report.subscribed_capacity >= 0
    assert "hours_above_subscription" in report.extra


def test_hourly_flows_by_kind(solved):
    model, result, spec = solved(EnergyTariff())
    report = build_report(model, result, EnergyTariff(), spec.economic)
    hourly = report.hourly
    for column in ("grid_import", "generation", "battery_charge", "battery_discharge", "heat_storage_charge"):
        assert column in hourly
    assert np.all(hourly["heat_storage_charge"] == 0.0)
    assert np.all(hourly["battery_charge"] <= hourly["generation"] + 1e-7)


def test_not_optimal(make_spec, make_series):
    model = build_model(make_spec(), make_series(), EnergyTariff())
    result = SolveResult(SolveStatus.INFEASIBLE)
    with pytest.raises(NotOptimal) as exc_info:
        build_report(model, result, EnergyTariff(), make_spec().economic)
    assert exc_info.value.status == "infeasible"


def test_daily_operation(solved):
    model, result, spec = solved(EnergyTariff())
    report = build_report(model, result, EnergyTariff(), spec.economic)
    day = daily_operation(report, 1)
    assert list(day.index) == list(range(24, 48))
    with pytest.raises(ValueError):
        daily_operation(report, 2)


def test_csv_files_round_trip(solved, tmp_path):
    model, result, spec = solved(EnergyTariff(), ModelOptions(export_limit=5.0))
    report = build_report(model, result, EnergyTariff(), spec.economic)
    out_dir = CsvReportLoader().load(report, tmp_path / report.label)

    for name in ("capacities", "hourly_flows", "duration_curve", "cost_breakdown", "summary"):
        assert (out_dir / f"{name}.csv").exists()
    curve = pd.read_csv(out_dir / "duration_curve.csv")
    assert list(curve.columns) == ["rank", "net_import"]

    back = SolutionReport.from_directory(out_dir)
    assert back.label == "energy_limit5"
    assert back.export_limit == 5.0
    assert back.subscribed_capacity is None
    assert back.capacities == pytest.approx(report.capacities, rel=1e-11)
    assert back.total_cost == pytest.approx(report.total_cost, rel=1e-11)
    assert back.dso_revenue_lifetime == pytest.approx(report.dso_revenue_lifetime, rel=1e-11)
    np.testing.assert_allclose(back.imports, report.imports, rtol=1e-11, atol=1e-12)


def test_csv_files_are_reproducible(solved, tmp_path):
    model, result, spec = solved(EnergyTariff())
    report = build_report(model, result, EnergyTariff(), spec.economic)
    loader = CsvReportLoader()
    first = loader.load(report, tmp_path / "a")
    second = loader.load(report, tmp_path / "b")
    for name in ("capacities", "hourly_flows", "duration_curve", "cost_breakdown", "summary"):
        assert (first / f"{name}.csv").read_bytes() == (second / f"{name}.csv").read_bytes()


def test_missing_report_directory(tmp_path):
    with pytest.raises(AnalysisError):
        SolutionReport.from_directory(tmp_path / "nowhere")
