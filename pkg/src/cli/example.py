"""
Example scenario document.

Three building types sharing a heating grid, on-site PV, solar thermal, heat
pumps, boilers, storages and a wood-chip CHP at the production plant. Loads
and weather come from ``synthetic_year``.
"""

import copy
from typing import Any, Dict, Optional, Sequence

from src.timeseries.series import HOURS_PER_YEAR
from src.timeseries.synthetic import electric_load_id, heat_load_id, series_manifest

# Building type -> (count, roof area m2)
EXAMPLE_BUILDINGS = {
    "student_housing": (2, 1500.0),
    "normal_offices": (1, 1200.0),
    "passive_offices": (1, 1000.0),
}

EXAMPLE_TECHNOLOGIES = [
    {"id": "pv", "kind": "pv", "level": "building", "carrier": "electricity",
     "discounted_investment_cost": 1100.0, "annual_maintenance_cost": 12.0,
     "efficiency": 0.9, "area_per_kw": 6.5},
    {"id": "st", "kind": "solar_thermal", "level": "building", "carrier": "heat",
     "discounted_investment_cost": 800.0, "annual_maintenance_cost": 8.0,
     "efficiency": 0.6, "area_per_kw": 2.0},
    {"id": "ashp", "kind": "heat_pump", "level": "building", "carrier": "heat",
     "discounted_investment_cost": 900.0, "annual_maintenance_cost": 18.0,
     "cop_source": "outdoor", "supply_temperature": 55.0, "carnot_efficiency": 0.45},
    {"id": "eb", "kind": "electric_boiler", "level": "building", "carrier": "heat",
     "discounted_investment_cost": 90.0, "annual_maintenance_cost": 1.0, "efficiency": 0.98},
    {"id": "gb", "kind": "fuel_boiler", "level": "building", "carrier": "heat",
     "discounted_investment_cost": 150.0, "annual_maintenance_cost": 3.0, "efficiency": 0.9, "fuel": "gas"},
    {"id": "bat", "kind": "battery", "level": "building", "carrier": "electricity_storage",
     "discounted_investment_cost": 450.0, "annual_maintenance_cost": 5.0,
     "efficiency": 0.95, "storage_power_ratio": 0.5},
    {"id": "hs", "kind": "heat_storage", "level": "building", "carrier": "heat_storage",
     "discounted_investment_cost": 40.0, "annual_maintenance_cost": 0.5,
     "efficiency": 0.98, "storage_power_ratio": 0.25},
    {"id": "gshp", "kind": "heat_pump", "level": "neighborhood", "carrier": "heat",
     "discounted_investment_cost": 1400.0, "annual_maintenance_cost": 20.0,
     "cop_source": "ground", "supply_temperature": 65.0, "carnot_efficiency": 0.5},
    {"id": "chp", "kind": "chp", "level": "neighborhood", "carrier": "heat",
     "discounted_investment_cost": 2200.0, "annual_maintenance_cost": 40.0,
     "efficiency": 0.55, "fuel": "wood_chips", "power_to_heat_ratio": 0.45},
    {"id": "cbat", "kind": "battery", "level": "neighborhood", "carrier": "electricity_storage",
     "discounted_investment_cost": 400.0, "annual_maintenance_cost": 4.0,
     "efficiency": 0.95, "storage_power_ratio": 0.5},
]

EXAMPLE_FUELS = [
    {"id": "gas", "price": 0.05},
    {"id": "wood_chips", "price": 0.03},
]

EXAMPLE_ECONOMICS = {
    "discount_rate": 0.05,
    "lifetime_years": 60,
    "grid_tariff_flat": 0.0225,
    "retailer_tariff": 0.005,
    "heating_grid_cost": 60000.0,
    "heating_grid_enabled": True,
}


def example_scenario(
    series_path: str = "series.csv",
    horizon: int = HOURS_PER_YEAR,
    tariff: Optional[Dict[str, Any]] = None,
    technologies: Optional[Sequence[Dict[str, Any]]] = None,
    co2_constraint: bool = True,
) -> Dict[str, Any]:
    """Scenario document over series written by ``write_series_csv(synthetic_year(...))``."""
    buildings = [
        {
            "id": name,
            "count": count,
            "electric_load_series_ref": electric_load_id(name),
            "heat_load_series_ref": heat_load_id(name),
            "roof_area": roof,
        }
        for name, (count, roof) in EXAMPLE_BUILDINGS.items()
    ]
    return {
        "neighborhood": {"building_types": buildings, "heating_grid_loss": 0.1},
        "technologies": copy.deepcopy(list(technologies if technologies is not None else EXAMPLE_TECHNOLOGIES)),
        "fuels": copy.deepcopy(EXAMPLE_FUELS),
        "economics": dict(EXAMPLE_ECONOMICS),
        "series": {"path": series_path, "columns": series_manifest(list(EXAMPLE_BUILDINGS)), "horizon": horizon},
        "tariff": copy.deepcopy(tariff) if tariff else {"type": "energy"},
        "options": {"export_limit": None, "co2_constraint": co2_constraint},
    }
