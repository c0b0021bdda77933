"""
Validation of neighborhood specifications against their time series.

The validator walks the whole specification, collects every violation and
raises them together, so a scenario author can fix all problems in one pass.
"""

from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Union

import numpy as np
from airflow.utils.log.logging_mixin import LoggingMixin

from src.timeseries.errors import HorizonMismatch
from src.timeseries.series import DEFAULT_UNITS, GROUND_TEMPERATURE, OUTDOOR_TEMPERATURE, TimeSeriesSet

from .assets import heat_pump_cop
from .errors import BadUnit, InvalidReference, MissingSeries, NegativeCost, SpecValidationError
from .types import KIND_CARRIERS, NeighborhoodSpec, TechnologyKind, TechnologySpec

COP_SOURCES = {"outdoor": OUTDOOR_TEMPERATURE, "ground": GROUND_TEMPERATURE}


@dataclass(frozen=True, eq=False)
class ValidatedSpec:
    """
    A neighborhood specification known to satisfy every invariant.

    Attributes:
        spec: The validated specification
        series: Series set the specification was checked against
        cop_profiles: Hourly COP per heat-pump technology id
    """

    spec: NeighborhoodSpec
    series: TimeSeriesSet
    cop_profiles: Mapping[str, np.ndarray]

    @property
    def horizon(self) -> int:
        return self.series.horizon


class NeighborhoodValidator(LoggingMixin):
    """
    Checks a NeighborhoodSpec and its TimeSeriesSet.

    Attributes:
        _validation_errors (List[Exception]): Violations found so far
    """

    def __init__(self):
        super().__init__()
        self._validation_errors: List[Exception] = []

    def validate(self, spec: NeighborhoodSpec, ts: TimeSeriesSet) -> ValidatedSpec:
        """
        Validate a specification.

        Args:
            spec: Neighborhood specification
            ts: Series the specification references

        Returns:
            ValidatedSpec: The specification with derived heat-pump COP profiles

        Raises:
            SpecValidationError: Listing every violation found
        """
        self._validation_errors = []

        self._validate_structure(spec)
        self._validate_economics(spec)
        self._validate_buildings(spec)
        fuel_ids = {fuel.id for fuel in spec.fuels}
        for fuel in spec.fuels:
            self._check_cost(f"fuel {fuel.id}", "price", fuel.price)
            if fuel.co2_factor < 0:
                self._validation_errors.append(
                    BadUnit(f"fuel {fuel.id}", f"co2_factor {fuel.co2_factor} < 0")
                )
        for tech in spec.technologies:
            self._validate_technology(tech, fuel_ids, ts)
        self._validate_series(spec, ts)

        self._log_validation_summary(spec)
        if self._validation_errors:
            raise SpecValidationError(self._validation_errors)

        return ValidatedSpec(spec, ts, self._cop_profiles(spec, ts))

    def _check_cost(self, subject: str, field: str, value: float) -> None:
        if value < 0:
            self._validation_errors.append(NegativeCost(subject, field, value))

    def _check_unique(self, what: str, ids: Iterable[str]) -> None:
        for item, count in Counter(ids).items():
            if count > 1:
                self._validation_errors.append(InvalidReference(what, f"duplicate id {item!r}"))

    def _validate_structure(self, spec: NeighborhoodSpec) -> None:
        if not spec.building_types:
            self._validation_errors.append(
                InvalidReference("building_types", "at least one building type is required")
            )
        self._check_unique("building_types", (b.id for b in spec.building_types))
        self._check_unique("technologies", (t.id for t in spec.technologies))
        self._check_unique("fuels", (f.id for f in spec.fuels))
        if not 0 <= spec.heating_grid_loss < 1:
            self._validation_errors.append(
                BadUnit("heating_grid_loss", f"{spec.heating_grid_loss} outside [0, 1)")
            )

    def _validate_economics(self, spec: NeighborhoodSpec) -> None:
        economic = spec.economic
        if economic.lifetime_years < 1:
            self._validation_errors.append(
                BadUnit("economic", f"lifetime_years {economic.lifetime_years} < 1")
            )
        if economic.discount_rate < 0:
            self._validation_errors.append(
                BadUnit("economic", f"discount_rate {economic.discount_rate} < 0")
            )
        if economic.el_co2_factor < 0:
            self._validation_errors.append(
                BadUnit("economic", f"el_co2_factor {economic.el_co2_factor} < 0")
            )
        for field in ("grid_tariff_flat", "retailer_tariff", "heating_grid_cost"):
            self._check_cost("economic", field, getattr(economic, field))

    def _validate_buildings(self, spec: NeighborhoodSpec) -> None:
        for building in spec.building_types:
            if building.count < 1:
                self._validation_errors.append(
                    BadUnit(f"building {building.id}", f"count {building.count} < 1")
                )
            if building.roof_area < 0:
                self._validation_errors.append(
                    BadUnit(f"building {building.id}", f"roof_area {building.roof_area} < 0")
                )

    def _validate_technology(self, tech: TechnologySpec, fuel_ids: set, ts: TimeSeriesSet) -> None:
        subject = f"technology {tech.id}"

        if KIND_CARRIERS[tech.kind] != tech.carrier:
            self._validation_errors.append(
                BadUnit(subject, f"kind {tech.kind.value} needs carrier {KIND_CARRIERS[tech.kind].value}")
            )
        self._check_cost(subject, "discounted_investment_cost", tech.discounted_investment_cost)
        self._check_cost(subject, "annual_maintenance_cost", tech.annual_maintenance_cost)

        if tech.kind != TechnologyKind.HEAT_PUMP and not 0 < tech.efficiency <= 1:
            self._validation_errors.append(BadUnit(subject, f"efficiency {tech.efficiency} outside (0, 1]"))
        if tech.max_capacity is not None and tech.max_capacity < 0:
            self._validation_errors.append(BadUnit(subject, f"max_capacity {tech.max_capacity} < 0"))
        if tech.storage_power_ratio is not None and tech.storage_power_ratio <= 0:
            self._validation_errors.append(
                BadUnit(subject, f"storage_power_ratio {tech.storage_power_ratio} <= 0")
            )
        if tech.area_per_kw is not None and tech.area_per_kw <= 0:
            self._validation_errors.append(BadUnit(subject, f"area_per_kw {tech.area_per_kw} <= 0"))
        if tech.power_to_heat_ratio < 0:
            self._validation_errors.append(
                BadUnit(subject, f"power_to_heat_ratio {tech.power_to_heat_ratio} < 0")
            )

        if tech.uses_fuel:
            if tech.fuel is None:
                self._validation_errors.append(InvalidReference(subject, "fuel technology without fuel"))
            elif tech.fuel not in fuel_ids:
                self._validation_errors.append(InvalidReference(subject, f"unknown fuel {tech.fuel!r}"))

        if tech.kind == TechnologyKind.HEAT_PUMP:
            self._validate_heat_pump(tech, subject, ts)

    def _validate_heat_pump(self, tech: TechnologySpec, subject: str, ts: TimeSeriesSet) -> None:
        if tech.cop_profile is not None:
            if tech.cop_profile not in ts:
                self._validation_errors.append(MissingSeries(tech.cop_profile))
            elif np.any(ts[tech.cop_profile] < 1):
                self._validation_errors.append(BadUnit(subject, "cop_profile values must be >= 1"))
        elif tech.cop_source is None:
            self._validation_errors.append(
                InvalidReference(subject, "heat pump needs cop_profile or cop_source")
            )
        elif tech.cop_source not in COP_SOURCES:
            self._validation_errors.append(
                InvalidReference(subject, f"cop_source must be one of {sorted(COP_SOURCES)}")
            )
        if tech.cop_profile is None and not 0 < tech.carnot_efficiency <= 1:
            self._validation_errors.append(
                BadUnit(subject, f"carnot_efficiency {tech.carnot_efficiency} outside (0, 1]")
            )

    def _validate_series(self, spec: NeighborhoodSpec, ts: TimeSeriesSet) -> None:
        expected: Dict[str, Optional[str]] = dict(DEFAULT_UNITS)
        for building in spec.building_types:
            expected[building.electric_load_series_ref] = "kWh/h"
            expected[building.heat_load_series_ref] = "kWh/h"
        for tech in spec.technologies:
            if tech.cop_profile is not None:
                expected[tech.cop_profile] = "-"

        for series_id, unit in expected.items():
            if series_id not in ts:
                if not (unit == "-" and any(isinstance(v, MissingSeries) and v.series_id == series_id
                                            for v in self._validation_errors)):
                    self._validation_errors.append(MissingSeries(series_id))
                continue
            if len(ts[series_id]) != ts.horizon:
                self._validation_errors.append(
                    HorizonMismatch(len(ts[series_id]), ts.horizon, series_id)
                )
            if ts.unit(series_id) != unit:
                self._validation_errors.append(
                    BadUnit(f"series {series_id}", f"unit {ts.unit(series_id)!r}, expected {unit!r}")
                )

    def _cop_profiles(self, spec: NeighborhoodSpec, ts: TimeSeriesSet) -> Dict[str, np.ndarray]:
        profiles: Dict[str, np.ndarray] = {}
        for tech in spec.technologies:
            if tech.kind != TechnologyKind.HEAT_PUMP:
                continue
            if tech.cop_profile is not None:
                profile = np.array(ts[tech.cop_profile], dtype=float)
            else:
                source = ts[COP_SOURCES[tech.cop_source]]
                profile = heat_pump_cop(source, tech.supply_temperature, tech.carnot_efficiency)
            profile.setflags(write=False)
            profiles[tech.id] = profile
        return profiles

    def _log_validation_summary(self, spec: NeighborhoodSpec) -> None:
        self.log.info(
            f"Validation completed:\n"
            f"- Building types: {len(spec.building_types)}\n"
            f"- Technologies: {len(spec.technologies)}\n"
            f"- Fuels: {len(spec.fuels)}\n"
            f"- Violations: {len(self._validation_errors)}"
        )
        if self._validation_errors:
            self.log.warning(
                "Validation errors occurred:\n" + "\n".join(str(v) for v in self._validation_errors)
            )


def validate_neighborhood(
    spec: Union[NeighborhoodSpec, ValidatedSpec], ts: Optional[TimeSeriesSet] = None
) -> ValidatedSpec:
    """
    Validate a specification; a ValidatedSpec is returned unchanged.

    Args:
        spec: Specification, or an already validated one
        ts: Series set (ignored for an already validated spec)

    Returns:
        ValidatedSpec: Validated specification

    Raises:
        SpecValidationError: Listing every violation
    """
    if isinstance(spec, ValidatedSpec):
        return spec
    if ts is None:
        raise ValueError("A TimeSeriesSet is required to validate a neighborhood")
    return NeighborhoodValidator().validate(spec, ts)
