"""
Core domain types for the neighborhood investment model.

Units are fixed across the code base: kW, kWh, EUR, gCO2/kWh, hourly steps.
These models only check structure (types, enums, identifiers); range and
cross-reference invariants are checked by ``validate_neighborhood`` so that
every violation can be reported at once.
"""

import hashlib
from enum import Enum
from typing import Any, Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

# Identifiers end up inside LP-file names, so they are kept to a safe alphabet.
ID_PATTERN = r"^[A-Za-z_][A-Za-z0-9_]*$"

ELECTRICITY_CO2_FACTOR = 17.0

FUEL_CO2_FACTORS: Dict[str, float] = {
    "gas": 277.0,
    "wood_chips": 7.0,
}


class Level(str, Enum):
    BUILDING = "building"
    NEIGHBORHOOD = "neighborhood"


class Carrier(str, Enum):
    ELECTRICITY = "electricity"
    HEAT = "heat"
    ELECTRICITY_STORAGE = "electricity_storage"
    HEAT_STORAGE = "heat_storage"


class TechnologyKind(str, Enum):
    PV = "pv"
    SOLAR_THERMAL = "solar_thermal"
    HEAT_PUMP = "heat_pump"
    ELECTRIC_BOILER = "electric_boiler"
    FUEL_BOILER = "fuel_boiler"
    CHP = "chp"
    BATTERY = "battery"
    HEAT_STORAGE = "heat_storage"


# Carrier each kind must declare.
KIND_CARRIERS: Dict[TechnologyKind, Carrier] = {
    TechnologyKind.PV: Carrier.ELECTRICITY,
    TechnologyKind.SOLAR_THERMAL: Carrier.HEAT,
    TechnologyKind.HEAT_PUMP: Carrier.HEAT,
    TechnologyKind.ELECTRIC_BOILER: Carrier.HEAT,
    TechnologyKind.FUEL_BOILER: Carrier.HEAT,
    TechnologyKind.CHP: Carrier.HEAT,
    TechnologyKind.BATTERY: Carrier.ELECTRICITY_STORAGE,
    TechnologyKind.HEAT_STORAGE: Carrier.HEAT_STORAGE,
}

FUEL_KINDS = (TechnologyKind.FUEL_BOILER, TechnologyKind.CHP)
SOLAR_KINDS = (TechnologyKind.PV, TechnologyKind.SOLAR_THERMAL)
STORAGE_KINDS = (TechnologyKind.BATTERY, TechnologyKind.HEAT_STORAGE)


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class TechnologySpec(_Frozen):
    """
    Investable technology.

    Capacity is kW of output for converters and kWh for storages. Solar
    capacities are kW-peak: hourly output is capacity * insolation * efficiency.
    """

    id: str = Field(pattern=ID_PATTERN)
    kind: TechnologyKind
    level: Level
    carrier: Carrier
    discounted_investment_cost: float
    annual_maintenance_cost: float = 0.0
    efficiency: float = 1.0
    cop_profile: Optional[str] = Field(
        default=None, description="Series id of an hourly COP profile (heat pumps)"
    )
    cop_source: Optional[str] = Field(
        default=None, description="'outdoor' or 'ground'; derives COP from temperatures"
    )
    supply_temperature: float = 55.0
    carnot_efficiency: float = 0.5
    fuel: Optional[str] = None
    max_capacity: Optional[float] = None
    storage_power_ratio: Optional[float] = None
    area_per_kw: Optional[float] = None
    power_to_heat_ratio: float = 0.0

    @property
    def is_storage(self) -> bool:
        return self.kind in STORAGE_KINDS

    @property
    def uses_fuel(self) -> bool:
        return self.kind in FUEL_KINDS

    @property
    def capacity_unit(self) -> str:
        return "kWh" if self.is_storage else "kW"


class FuelSpec(_Frozen):
    id: str = Field(pattern=ID_PATTERN)
    price: float
    co2_factor: float

    @model_validator(mode="before")
    @classmethod
    def _default_co2_factor(cls, data: Any) -> Any:
        if isinstance(data, dict) and "co2_factor" not in data:
            known = FUEL_CO2_FACTORS.get(data.get("id", ""))
            if known is not None:
                data = {**data, "co2_factor": known}
        return data


class EconomicParams(_Frozen):
    discount_rate: float = 0.05
    lifetime_years: int = 60
    grid_tariff_flat: float = 0.0225
    retailer_tariff: float
    heating_grid_cost: float = 0.0
    heating_grid_enabled: bool = True
    el_co2_factor: float = ELECTRICITY_CO2_FACTOR


class BuildingType(_Frozen):
    id: str = Field(pattern=ID_PATTERN)
    count: int = 1
    electric_load_series_ref: str
    heat_load_series_ref: str
    roof_area: float = 0.0


class NeighborhoodSpec(_Frozen):
    building_types: Tuple[BuildingType, ...]
    heating_grid_loss: float = 0.0
    economic: EconomicParams
    technologies: Tuple[TechnologySpec, ...] = ()
    fuels: Tuple[FuelSpec, ...] = ()

    def technology(self, tech_id: str) -> TechnologySpec:
        for tech in self.technologies:
            if tech.id == tech_id:
                return tech
        raise KeyError(tech_id)

    def fuel(self, fuel_id: str) -> FuelSpec:
        for fuel in self.fuels:
            if fuel.id == fuel_id:
                return fuel
        raise KeyError(fuel_id)

    def fingerprint(self) -> str:
        """Stable digest used to check that reports come from the same neighborhood."""
        payload = self.model_dump_json().encode("utf-8")
        return hashlib.sha256(payload).hexdigest()[:16]
