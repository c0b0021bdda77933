"""
Shared fixtures.

Small neighborhoods over short horizons with constant or synthetic series,
so that model tests solve in well under a second with the scipy backend.
"""

import json
from pathlib import Path
from typing import Dict, Optional

import numpy as np
import pytest

from src.cli.example import EXAMPLE_TECHNOLOGIES, example_scenario
from src.domain.types import BuildingType, EconomicParams, FuelSpec, NeighborhoodSpec, TechnologySpec
from src.timeseries.csv_extractor import write_series_csv
from src.timeseries.series import (
    GROUND_TEMPERATURE,
    INSOLATION,
    OUTDOOR_TEMPERATURE,
    REGIONAL_LOAD,
    SPOT_PRICE,
    TimeSeriesSet,
)
from src.timeseries.synthetic import synthetic_year

HORIZON = 48


@pytest.fixture
def make_series():
    """
    Factory for a one-building series set with constant defaults.

    Returns:
        Callable building a TimeSeriesSet for building type ``apt``.
    """

    def _make(
        horizon: int = HORIZON,
        el_load=1.0,
        heat_load=0.0,
        spot=0.04,
        insolation=0.0,
        regional_load=None,
        outdoor=5.0,
        ground=8.0,
        extra: Optional[Dict[str, np.ndarray]] = None,
    ) -> TimeSeriesSet:
        def full(value):
            return np.broadcast_to(np.asarray(value, dtype=float), (horizon,)).copy()

        series = {
            SPOT_PRICE: full(spot),
            REGIONAL_LOAD: full(regional_load if regional_load is not None else np.arange(horizon, dtype=float)),
            INSOLATION: full(insolation),
            OUTDOOR_TEMPERATURE: full(outdoor),
            GROUND_TEMPERATURE: full(ground),
            "apt_el": full(el_load),
            "apt_heat": full(heat_load),
        }
        units = {
            SPOT_PRICE: "EUR/kWh",
            REGIONAL_LOAD: "MW",
            INSOLATION: "kWh/m²",
            OUTDOOR_TEMPERATURE: "°C",
            GROUND_TEMPERATURE: "°C",
            "apt_el": "kWh/h",
            "apt_heat": "kWh/h",
        }
        for series_id, values in (extra or {}).items():
            series[series_id] = full(values)
            units[series_id] = "-"
        return TimeSeriesSet(series, units, horizon)

    return _make


@pytest.fixture
def make_spec():
    """
    Factory for a one-building neighborhood.

    Returns:
        Callable building a NeighborhoodSpec with building type ``apt``.
    """

    def _make(
        technologies=(),
        fuels=(),
        count: int = 1,
        roof_area: float = 0.0,
        heating_grid: bool = False,
        retailer: float = 0.0,
        **economic,
    ) -> NeighborhoodSpec:
        return NeighborhoodSpec(
            building_types=(
                BuildingType(
                    id="apt",
                    count=count,
                    electric_load_series_ref="apt_el",
                    heat_load_series_ref="apt_heat",
                    roof_area=roof_area,
                ),
            ),
            economic=EconomicParams(
                retailer_tariff=retailer, heating_grid_enabled=heating_grid, **economic
            ),
            technologies=tuple(TechnologySpec(**t) if isinstance(t, dict) else t for t in technologies),
            fuels=tuple(FuelSpec(**f) if isinstance(f, dict) else f for f in fuels),
        )

    return _make


@pytest.fixture
def pv_tech():
    return {
        "id": "pv",
        "kind": "pv",
        "level": "building",
        "carrier": "electricity",
        "discounted_investment_cost": 800.0,
        "annual_maintenance_cost": 8.0,
        "efficiency": 1.0,
    }


@pytest.fixture
def battery_tech():
    return {
        "id": "bat",
        "kind": "battery",
        "level": "building",
        "carrier": "electricity_storage",
        "discounted_investment_cost": 50.0,
        "efficiency": 0.95,
        "storage_power_ratio": 1.0,
    }


@pytest.fixture
def gas_boiler_tech():
    return {
        "id": "gb",
        "kind": "fuel_boiler",
        "level": "building",
        "carrier": "heat",
        "discounted_investment_cost": 100.0,
        "efficiency": 0.9,
        "fuel": "gas",
    }


@pytest.fixture
def synthetic_series():
    """Two synthetic days for the building types of the example scenario."""
    return synthetic_year(
        HORIZON,
        {"student_housing": (40.0, 4.0, 15.0), "normal_offices": (30.0, 3.0, 2.0), "passive_offices": (20.0, 1.0, 1.0)},
        seed=1,
    )


@pytest.fixture
def scenario_file(tmp_path, synthetic_series):
    """
    Factory writing a two-day scenario document next to its series CSV.

    Returns:
        Callable returning the path of the written scenario.json.
    """

    def _write(technologies=None, co2_constraint=False, tariff=None, **overrides) -> Path:
        write_series_csv(synthetic_series, tmp_path / "series.csv")
        techs = technologies if technologies is not None else [
            t for t in EXAMPLE_TECHNOLOGIES if t["id"] in ("pv", "eb", "bat")
        ]
        document = example_scenario("series.csv", HORIZON, tariff, techs, co2_constraint)
        document.update(overrides)
        path = tmp_path / "scenario.json"
        path.write_text(json.dumps(document, indent=2), encoding="utf-8")
        return path

    return _write
