"""
Synthetic representative years.

Stand-ins for measured neighborhood data: smooth seasonal and daily shapes
with seeded noise, so fixtures and example scenarios are reproducible.
"""

from typing import Dict, Mapping, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from .series import (
    GROUND_TEMPERATURE,
    HOURS_PER_DAY,
    HOURS_PER_YEAR,
    INSOLATION,
    OUTDOOR_TEMPERATURE,
    REGIONAL_LOAD,
    SPOT_PRICE,
    TimeSeriesSet,
)

# Building type -> (mean electric kWh/h, heat loss kW/K, hot water kWh/h)
DEFAULT_BUILDINGS: Dict[str, Tuple[float, float, float]] = {
    "student_housing": (40.0, 4.0, 15.0),
    "normal_offices": (30.0, 3.0, 2.0),
    "passive_offices": (20.0, 1.0, 1.0),
    "apartments": (25.0, 2.5, 8.0),
}


def electric_load_id(building: str) -> str:
    return f"{building}_el"


def heat_load_id(building: str) -> str:
    return f"{building}_heat"


def synthetic_year(
    horizon: int = HOURS_PER_YEAR,
    buildings: Optional[Mapping[str, Tuple[float, float, float]]] = None,
    seed: int = 0,
) -> TimeSeriesSet:
    """
    Generate every series a neighborhood scenario needs.

    Args:
        horizon: Number of hours
        buildings: Building type -> (mean electric load, heat loss coefficient, hot water load)
        seed: Seed for the noise generator

    Returns:
        TimeSeriesSet: Weather, prices, regional load and per-building loads
    """
    buildings = DEFAULT_BUILDINGS if buildings is None else buildings
    rng = np.random.default_rng(seed)

    t = np.arange(horizon)
    day = t // HOURS_PER_DAY
    hour = t % HOURS_PER_DAY
    season = np.cos(2 * np.pi * (day - 15) / 365.0)  # +1 mid-January, -1 mid-July
    daily = np.sin(np.pi * (hour - 6) / 12.0)

    outdoor = 4.0 - 9.0 * season + 3.0 * daily + rng.normal(0.0, 1.5, horizon)
    ground = 6.0 - 2.0 * season

    clearness = np.repeat(rng.uniform(0.3, 1.0, horizon // HOURS_PER_DAY + 1), HOURS_PER_DAY)[:horizon]
    insolation = np.maximum(daily, 0.0) * (0.55 - 0.4 * season) * clearness

    morning_evening = np.exp(-((hour - 8) ** 2) / 4.0) + np.exp(-((hour - 18) ** 2) / 4.0)
    regional = 9000.0 + 3500.0 * season + 1500.0 * morning_evening + rng.normal(0.0, 150.0, horizon)
    spot = 0.04 + 0.012 * season + 0.015 * morning_evening + rng.normal(0.0, 0.004, horizon)

    frame = {
        SPOT_PRICE: spot,
        REGIONAL_LOAD: regional,
        INSOLATION: insolation,
        OUTDOOR_TEMPERATURE: outdoor,
        GROUND_TEMPERATURE: ground,
    }
    units = {
        SPOT_PRICE: "EUR/kWh",
        REGIONAL_LOAD: "MW",
        INSOLATION: "kWh/m²",
        OUTDOOR_TEMPERATURE: "°C",
        GROUND_TEMPERATURE: "°C",
    }

    occupancy = 0.6 + 0.4 * np.clip(daily + 0.3, 0.0, 1.0)
    for name, (mean_el, loss, hot_water) in buildings.items():
        frame[electric_load_id(name)] = mean_el * occupancy * rng.uniform(0.9, 1.1, horizon)
        frame[heat_load_id(name)] = loss * np.maximum(17.0 - outdoor, 0.0) + hot_water * occupancy
        units[electric_load_id(name)] = "kWh/h"
        units[heat_load_id(name)] = "kWh/h"

    return TimeSeriesSet.from_frame(pd.DataFrame(frame), units, horizon)


def series_manifest(buildings: Sequence[str]) -> Dict[str, str]:
    """Manifest mapping every series id to the same-named CSV column."""
    ids = [SPOT_PRICE, REGIONAL_LOAD, INSOLATION, OUTDOOR_TEMPERATURE, GROUND_TEMPERATURE]
    for name in buildings:
        ids.extend([electric_load_id(name), heat_load_id(name)])
    return {series_id: series_id for series_id in ids}
