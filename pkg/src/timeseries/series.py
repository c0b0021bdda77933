"""
Hourly series for one representative year.

Hour 0 is 00:00 on January 1st; the clock has no daylight-saving shifts.
"""

from dataclasses import dataclass
from typing import Dict, Iterator, Mapping, Optional

import numpy as np
import pandas as pd

from .errors import UnknownUnit

HOURS_PER_YEAR = 8760
HOURS_PER_DAY = 24

UNITS = frozenset({"kWh/h", "EUR/kWh", "°C", "kWh/m²", "MW", "-"})

UNIT_ALIASES = {
    "degC": "°C",
    "C": "°C",
    "kWh/m2": "kWh/m²",
    "kW": "kWh/h",
}

# Units whose values are physical quantities that cannot be negative.
NON_NEGATIVE_UNITS = frozenset({"kWh/h", "kWh/m²", "MW"})

SPOT_PRICE = "spot_price"
REGIONAL_LOAD = "regional_load"
INSOLATION = "insolation"
OUTDOOR_TEMPERATURE = "outdoor_temperature"
GROUND_TEMPERATURE = "ground_temperature"

REQUIRED_SERIES = (
    SPOT_PRICE,
    REGIONAL_LOAD,
    INSOLATION,
    OUTDOOR_TEMPERATURE,
    GROUND_TEMPERATURE,
)

DEFAULT_UNITS = {
    SPOT_PRICE: "EUR/kWh",
    REGIONAL_LOAD: "MW",
    INSOLATION: "kWh/m²",
    OUTDOOR_TEMPERATURE: "°C",
    GROUND_TEMPERATURE: "°C",
}


def normalize_unit(series_id: str, unit: str) -> str:
    unit = unit.strip()
    if unit in UNITS:
        return unit
    canonical = UNIT_ALIASES.get(unit)
    if canonical is None:
        raise UnknownUnit(series_id, unit)
    return canonical


def default_unit(series_id: str) -> str:
    """Unit assumed when neither the manifest nor the header declares one."""
    return DEFAULT_UNITS.get(series_id, "kWh/h")


def hour_of_day(t: int, horizon: int = HOURS_PER_YEAR) -> int:
    """
    Hour of day of a time step.

    Args:
        t: Hour index in [0, horizon)
        horizon: Number of hours in the representative year

    Returns:
        int: t mod 24

    Raises:
        IndexError: If t is out of range
    """
    if not 0 <= t < horizon:
        raise IndexError(f"Hour index {t} outside [0, {horizon})")
    return t % HOURS_PER_DAY


@dataclass(frozen=True, eq=False)
class TimeSeriesSet:
    """
    Named hourly series with unit tags.

    Arrays are stored read-only; the set can be shared between concurrent runs.
    """

    series: Mapping[str, np.ndarray]
    units: Mapping[str, str]
    horizon: int = HOURS_PER_YEAR

    def __post_init__(self):
        frozen: Dict[str, np.ndarray] = {}
        for series_id, values in self.series.items():
            array = np.array(values, dtype=float, copy=True)
            array.setflags(write=False)
            frozen[series_id] = array
        object.__setattr__(self, "series", frozen)
        object.__setattr__(self, "units", dict(self.units))

    @classmethod
    def from_frame(
        cls,
        df: pd.DataFrame,
        units: Optional[Mapping[str, str]] = None,
        horizon: Optional[int] = None,
    ) -> "TimeSeriesSet":
        """Build a set from a DataFrame with one column per series id."""
        units = dict(units or {})
        resolved = {
            col: normalize_unit(col, units.get(col, default_unit(col))) for col in df.columns
        }
        return cls(
            series={col: df[col].to_numpy(dtype=float) for col in df.columns},
            units=resolved,
            horizon=len(df) if horizon is None else horizon,
        )

    def __getitem__(self, series_id: str) -> np.ndarray:
        return self.series[series_id]

    def __contains__(self, series_id: object) -> bool:
        return series_id in self.series

    def __iter__(self) -> Iterator[str]:
        return iter(self.series)

    def __len__(self) -> int:
        return len(self.series)

    def unit(self, series_id: str) -> str:
        return self.units[series_id]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({k: np.asarray(v) for k, v in self.series.items()})

    def replace(self, **series: np.ndarray) -> "TimeSeriesSet":
        """Copy of the set with some series swapped, keeping units."""
        merged = dict(self.series)
        merged.update(series)
        units = {k: self.units.get(k, default_unit(k)) for k in merged}
        return TimeSeriesSet(merged, units, self.horizon)
