"""Scarcity-hour detection and time-of-use banding."""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from src.timeseries.series import HOURS_PER_DAY

from .schemes import LOW_HOURS, PEAK_HOURS


@dataclass(frozen=True, eq=False)
class ScarcityFlags:
    """
    Hours of highest regional load.

    Attributes:
        flags: One boolean per hour
        threshold: Smallest flagged regional load (MW)
    """

    flags: np.ndarray
    threshold: float

    @property
    def count(self) -> int:
        return int(np.count_nonzero(self.flags))

    @property
    def hours(self) -> np.ndarray:
        return np.flatnonzero(self.flags)

    def __len__(self) -> int:
        return len(self.flags)

    @classmethod
    def none(cls, horizon: int) -> "ScarcityFlags":
        """No flagged hour; used by schemes that ignore scarcity."""
        return cls(np.zeros(horizon, dtype=bool), float("inf"))


def scarcity_flags(regional_load: np.ndarray, fraction: float) -> ScarcityFlags:
    """
    Flag the ceil(fraction * T) hours with the highest regional load.

    Ties are broken in favour of the earlier hour.

    Args:
        regional_load: Regional load series (MW)
        fraction: Share of hours to flag, in (0, 1)

    Returns:
        ScarcityFlags: Flags and threshold

    Raises:
        ValueError: If the series is empty or the fraction is outside (0, 1)
    """
    load = np.asarray(regional_load, dtype=float)
    if load.size == 0:
        raise ValueError("Regional load series is empty")
    if not 0 < fraction < 1:
        raise ValueError(f"Scarcity fraction must lie in (0, 1), got {fraction}")

    # round off float noise before ceil: 0.07 * 100 == 7.000000000000001
    k = math.ceil(round(fraction * load.size, 9))
    # primary key: load descending, secondary: hour ascending
    order = np.lexsort((np.arange(load.size), -load))
    chosen = order[:k]

    flags = np.zeros(load.size, dtype=bool)
    flags[chosen] = True
    return ScarcityFlags(flags, float(load[chosen].min()))


class TouBand(str, Enum):
    LOW = "low"
    MED = "med"
    PEAK = "peak"


def tou_band(hour_of_day: int, peak_hours=PEAK_HOURS, low_hours=LOW_HOURS) -> TouBand:
    """
    Band of an hour of day: 7-9 and 18-20 are peak, 23-4 low, the rest medium.

    Raises:
        ValueError: If the hour is outside 0..23
    """
    if not 0 <= hour_of_day < HOURS_PER_DAY:
        raise ValueError(f"Hour of day must lie in 0..23, got {hour_of_day}")
    if hour_of_day in peak_hours:
        return TouBand.PEAK
    if hour_of_day in low_hours:
        return TouBand.LOW
    return TouBand.MED
