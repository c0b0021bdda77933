"""
The four grid-tariff designs.

All prices are EUR/kWh except the fixed charge (EUR/yr) and the capacity
price (EUR/kW/yr). Defaults are the reference coefficients of each design.
"""

from typing import Annotated, FrozenSet, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, field_validator, model_validator

from src.timeseries.series import HOURS_PER_DAY

PEAK_HOURS = frozenset({7, 8, 9, 18, 19, 20})
LOW_HOURS = frozenset({23, 0, 1, 2, 3, 4})


class _Scheme(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    @model_validator(mode="after")
    def _non_negative_prices(self):
        for name, value in self:
            if isinstance(value, float) and value < 0:
                raise ValueError(f"{name} must be >= 0, got {value}")
        return self

    @property
    def fixed_annual_charge(self) -> float:
        return 0.0


class EnergyTariff(_Scheme):
    type: Literal["energy"] = "energy"
    fixed_annual: float = 137.0
    energy_price: float = 0.0225

    @property
    def fixed_annual_charge(self) -> float:
        return self.fixed_annual


class TimeOfUseTariff(_Scheme):
    type: Literal["tou"] = "tou"
    low: float = 0.0123
    med: float = 0.0246
    peak: float = 0.0492
    peak_hours: FrozenSet[int] = PEAK_HOURS
    low_hours: FrozenSet[int] = LOW_HOURS

    @field_validator("peak_hours", "low_hours")
    @classmethod
    def _hours_in_day(cls, hours: FrozenSet[int]) -> FrozenSet[int]:
        bad = sorted(h for h in hours if not 0 <= h < HOURS_PER_DAY)
        if bad:
            raise ValueError(f"hours must lie in 0..23, got {bad}")
        return hours

    @model_validator(mode="after")
    def _disjoint_bands(self):
        overlap = self.peak_hours & self.low_hours
        if overlap:
            raise ValueError(f"peak_hours and low_hours overlap: {sorted(overlap)}")
        return self


class SubscribedCapacityTariff(_Scheme):
    type: Literal["subscribed"] = "subscribed"
    capacity_price: float = 108.0
    below_price: float = 0.005
    above_price: float = 0.1

    @model_validator(mode="after")
    def _above_exceeds_below(self):
        if not self.above_price > self.below_price:
            raise ValueError(
                f"above_price ({self.above_price}) must exceed below_price ({self.below_price})"
            )
        return self


class DynamicTariff(_Scheme):
    type: Literal["dynamic"] = "dynamic"
    base_price: float = 0.0225
    scarcity_price: float = 0.1
    export_bonus: float = 0.1
    scarcity_fraction: float = 0.05

    @field_validator("scarcity_fraction")
    @classmethod
    def _fraction_in_unit_interval(cls, fraction: float) -> float:
        if not 0 < fraction < 1:
            raise ValueError(f"scarcity_fraction must lie in (0, 1), got {fraction}")
        return fraction


TariffScheme = Annotated[
    Union[EnergyTariff, TimeOfUseTariff, SubscribedCapacityTariff, DynamicTariff],
    Field(discriminator="type"),
]

TARIFF_ADAPTER = TypeAdapter(TariffScheme)

SCHEME_TAGS = ("energy", "tou", "subscribed", "dynamic")
