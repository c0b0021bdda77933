"""
Placement of technologies on concrete assets.

Building-level technologies are instantiated once per building type,
neighborhood-level ones once for the central production plant.
"""

from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .types import (
    BuildingType,
    Carrier,
    Level,
    NeighborhoodSpec,
    TechnologyKind,
    TechnologySpec,
)

COP_MIN = 1.0
COP_MAX = 10.0
KELVIN = 273.15


@dataclass(frozen=True)
class Asset:
    """One investable instance of a technology."""

    id: str
    tech: TechnologySpec
    building: Optional[BuildingType] = None

    @property
    def location(self) -> str:
        return self.building.id if self.building is not None else "plant"

    @property
    def kind(self) -> TechnologyKind:
        return self.tech.kind


def asset_id(tech: TechnologySpec, building: Optional[BuildingType]) -> str:
    return tech.id if building is None else f"{tech.id}@{building.id}"


def expand_assets(spec: NeighborhoodSpec) -> List[Asset]:
    """
    Instantiate the technologies of a neighborhood.

    Neighborhood-level heat technologies and heat storages need the heating grid
    to reach the buildings; they are dropped when the grid is disabled.

    Args:
        spec: Neighborhood specification

    Returns:
        List[Asset]: Assets ordered by technology, then building type
    """
    assets: List[Asset] = []
    heating_grid = spec.economic.heating_grid_enabled

    for tech in spec.technologies:
        if tech.level == Level.BUILDING:
            assets.extend(Asset(asset_id(tech, b), tech, b) for b in spec.building_types)
            continue

        heat_side = tech.carrier in (Carrier.HEAT, Carrier.HEAT_STORAGE)
        if heat_side and not heating_grid:
            continue
        assets.append(Asset(asset_id(tech, None), tech, None))

    return assets


def heat_pump_cop(
    source_temperature: np.ndarray,
    supply_temperature: float,
    carnot_efficiency: float,
) -> np.ndarray:
    """
    Hourly COP from a Carnot-fraction model.

    COP_t = eta * T_supply / (T_supply - T_source), temperatures in kelvin,
    clipped to [1, 10].

    Args:
        source_temperature: Source temperature series in degC (outdoor air or ground)
        supply_temperature: Supply temperature in degC
        carnot_efficiency: Fraction of the Carnot COP reached

    Returns:
        np.ndarray: COP series
    """
    hot = supply_temperature + KELVIN
    cold = np.asarray(source_temperature, dtype=float) + KELVIN
    lift = np.maximum(hot - cold, 1e-6)
    return np.clip(carnot_efficiency * hot / lift, COP_MIN, COP_MAX)
