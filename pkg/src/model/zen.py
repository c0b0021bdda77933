"""
Investment and hourly operation model of a zero emission neighborhood.

One electricity balance covers the whole neighborhood behind a single grid
connection; heat is balanced per building type, with an optional lossy
heating grid fed by the central production plant. Every variable is
non-negative and every flow is in kWh per hourly step.
"""

from typing import Iterable, List, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.domain.assets import Asset, expand_assets
from src.domain.economics import discount_factor
from src.domain.types import (
    BuildingType,
    EconomicParams,
    NeighborhoodSpec,
    TechnologyKind,
)
from src.domain.validation import ValidatedSpec, validate_neighborhood
from src.tariffs.scarcity import ScarcityFlags, scarcity_flags
from src.tariffs.schemes import DynamicTariff, TariffScheme
from src.tariffs.terms import EXPORT_TOTAL, IMPORT_TOTAL, TariffTerms, tariff_linear_terms
from src.timeseries.series import INSOLATION, REGIONAL_LOAD, SPOT_PRICE, TimeSeriesSet

from .builder import ModelBuilder, Term
from .instance import EQ, LE, ModelInstance

INVESTMENT = "investment"
MAINTENANCE = "maintenance"
FUEL = "fuel"
SPOT = "spot"
RETAILER = "retailer"
TARIFF = "tariff"
COST_PARTS = (INVESTMENT, MAINTENANCE, FUEL, SPOT, RETAILER, TARIFF)

HEATING_GRID_CONSTANT = "heating_grid"
TARIFF_FIXED_CONSTANT = "tariff_fixed"

DEFAULT_POWER_RATIO = 1.0

GENERATOR_KINDS = (TechnologyKind.PV, TechnologyKind.CHP)
HEATER_KINDS = (
    TechnologyKind.SOLAR_THERMAL,
    TechnologyKind.HEAT_PUMP,
    TechnologyKind.ELECTRIC_BOILER,
    TechnologyKind.FUEL_BOILER,
    TechnologyKind.CHP,
)
ELECTRIC_HEATER_KINDS = (TechnologyKind.HEAT_PUMP, TechnologyKind.ELECTRIC_BOILER)


class ModelOptions(BaseModel):
    """Scenario switches of the model."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    export_limit: Optional[float] = Field(default=None, gt=0, description="kWh/h per hour")
    co2_constraint: bool = True


class ZenModelBuilder(ModelBuilder):
    """
    Model builder carrying the neighborhood being modelled.

    Attributes:
        validated: Validated neighborhood and derived COP profiles
        ts: Hourly series
        options: Scenario switches
        assets: Investable assets
        epsilon: Lifetime discount factor
        flags: Scarcity flags, set once a dynamic tariff is assembled
    """

    def __init__(self, validated: ValidatedSpec, ts: TimeSeriesSet, options: ModelOptions):
        super().__init__(horizon=ts.horizon)
        self.validated = validated
        self.spec: NeighborhoodSpec = validated.spec
        self.ts = ts
        self.options = options
        self.assets: List[Asset] = expand_assets(self.spec)
        economic = self.spec.economic
        self.epsilon = discount_factor(economic.discount_rate, economic.lifetime_years)
        self.flags: Optional[ScarcityFlags] = None

    @property
    def heating_grid(self) -> bool:
        return self.spec.economic.heating_grid_enabled

    def assets_of(self, *kinds: TechnologyKind, location: Optional[str] = None) -> List[Asset]:
        """Assets of the given kinds, optionally restricted to one location."""
        return [
            a for a in self.assets
            if a.kind in kinds and (location is None or a.location == location)
        ]

    def electricity_generators(self) -> List[Asset]:
        return [
            a for a in self.assets_of(*GENERATOR_KINDS)
            if a.kind == TechnologyKind.PV or a.tech.power_to_heat_ratio > 0
        ]

    def battery_export_symbol(self, battery: Asset) -> str:
        """Neighborhood batteries export through ``gb_exp``, building ones through ``pb_exp``."""
        return "gb_exp" if battery.building is None else "pb_exp"

    def add_variables(self) -> None:
        """Register every variable of the model."""
        for asset in self.assets:
            self.add_variable(
                "x",
                asset.id,
                lb=0.0,
                ub=asset.tech.max_capacity if asset.tech.max_capacity is not None else np.inf,
                unit=asset.tech.capacity_unit,
            )

        generators = {a.id for a in self.electricity_generators()}
        for t in range(self.horizon):
            for sym in ("imp", IMPORT_TOTAL, EXPORT_TOTAL):
                self.add_variable(sym, None, t)
            if self.heating_grid:
                for building in self.spec.building_types:
                    self.add_variable("hgd", building.id, t)

            for asset in self.assets:
                for sym in self._flow_symbols(asset, asset.id in generators):
                    self.add_variable(sym, asset.id, t)

    def _flow_symbols(self, asset: Asset, generates: bool) -> Tuple[str, ...]:
        kind = asset.kind
        symbols: Tuple[str, ...] = ()
        if kind in HEATER_KINDS:
            symbols += ("heat",)
        if kind in ELECTRIC_HEATER_KINDS:
            symbols += ("elin",)
        if asset.tech.uses_fuel:
            symbols += ("fuel",)
        if generates:
            symbols += ("gen", "gexp")
        if kind == TechnologyKind.BATTERY:
            symbols += ("soc", "ch", "gb_imp", "dis", self.battery_export_symbol(asset))
        if kind == TechnologyKind.HEAT_STORAGE:
            symbols += ("soc", "ch", "dis")
        return symbols

    def scarcity(self, scheme: TariffScheme) -> ScarcityFlags:
        if self.flags is None:
            if isinstance(scheme, DynamicTariff):
                self.flags = scarcity_flags(self.ts[REGIONAL_LOAD], scheme.scarcity_fraction)
            else:
                self.flags = ScarcityFlags.none(self.horizon)
        return self.flags


def _sum(builder: ModelBuilder, sym: str, assets: Iterable[Asset], t: int, coef: float = 1.0) -> List[Term]:
    return [(builder.var(sym, a.id, t), coef) for a in assets]


def _charge_symbols(storage: Asset) -> Tuple[str, ...]:
    return ("ch", "gb_imp") if storage.kind == TechnologyKind.BATTERY else ("ch",)


def _discharge_symbols(builder: ZenModelBuilder, storage: Asset) -> Tuple[str, ...]:
    if storage.kind == TechnologyKind.BATTERY:
        return "dis", builder.battery_export_symbol(storage)
    return ("dis",)


def add_metering(builder: ZenModelBuilder, t: int) -> None:
    """Metered totals: imp_tot = imp + grid charging, exp_tot = every export flow."""
    batteries = builder.assets_of(TechnologyKind.BATTERY)
    builder.add_constraint(
        "impdef",
        [(builder.var(IMPORT_TOTAL, None, t), 1.0), (builder.var("imp", None, t), -1.0)]
        + _sum(builder, "gb_imp", batteries, t, -1.0),
        EQ, 0.0, t=t,
    )
    exports = _sum(builder, "gexp", builder.electricity_generators(), t, -1.0)
    exports += [(builder.var(builder.battery_export_symbol(b), b.id, t), -1.0) for b in batteries]
    builder.add_constraint(
        "expdef", [(builder.var(EXPORT_TOTAL, None, t), 1.0)] + exports, EQ, 0.0, t=t
    )


def add_electricity_balance(builder: ZenModelBuilder, t: int) -> None:
    """
    Neighborhood electricity balance of hour t.

    on-site generation + import + battery discharge to load
        = electric load + heat-pump and boiler consumption + battery charge from on-site

    Direct exports leave through ``gexp`` before the balance; battery charge
    from on-site is bounded by on-site generation.
    """
    generators = builder.electricity_generators()
    batteries = builder.assets_of(TechnologyKind.BATTERY)
    electric_heaters = builder.assets_of(*ELECTRIC_HEATER_KINDS)

    load = sum(
        b.count * float(builder.ts[b.electric_load_series_ref][t]) for b in builder.spec.building_types
    )
    terms = (
        _sum(builder, "gen", generators, t)
        + [(builder.var("imp", None, t), 1.0)]
        + _sum(builder, "dis", batteries, t)
        + _sum(builder, "elin", electric_heaters, t, -1.0)
        + _sum(builder, "ch", batteries, t, -1.0)
    )
    builder.add_constraint("ebal", terms, EQ, load, t=t)

    if batteries:
        builder.add_constraint(
            "chsite",
            _sum(builder, "ch", batteries, t) + _sum(builder, "gen", generators, t, -1.0),
            LE, 0.0, t=t,
        )


def _heat_supply(builder: ZenModelBuilder, location: str, t: int) -> List[Term]:
    heaters = builder.assets_of(*HEATER_KINDS, location=location)
    stores = builder.assets_of(TechnologyKind.HEAT_STORAGE, location=location)
    return (
        _sum(builder, "heat", heaters, t)
        + _sum(builder, "dis", stores, t)
        + _sum(builder, "ch", stores, t, -1.0)
    )


def add_heat_balance(builder: ZenModelBuilder, building_type: BuildingType, t: int) -> None:
    """
    Heat balance of one building type in hour t.

    building heat production + storage discharge - charge
        + heating-grid delivery * (1 - loss) = heat load
    """
    terms = _heat_supply(builder, building_type.id, t)
    if builder.heating_grid:
        terms.append((builder.var("hgd", building_type.id, t), 1.0 - builder.spec.heating_grid_loss))
    load = building_type.count * float(builder.ts[building_type.heat_load_series_ref][t])
    builder.add_constraint("hbal", terms, EQ, load, asset=building_type.id, t=t)


def add_plant_balance(builder: ZenModelBuilder, t: int) -> None:
    """Production plant output equals the sum of heating-grid deliveries."""
    terms = _heat_supply(builder, "plant", t)
    terms += [(builder.var("hgd", b.id, t), -1.0) for b in builder.spec.building_types]
    builder.add_constraint("plant", terms, EQ, 0.0, t=t)


def add_technology_constraints(builder: ZenModelBuilder, asset: Asset, t: int) -> None:
    """Capacity and conversion rows of one converter in hour t."""
    tech = asset.tech
    kind = asset.kind
    x = builder.var("x", asset.id)

    if kind in (TechnologyKind.PV, TechnologyKind.SOLAR_THERMAL):
        yield_t = float(builder.ts[INSOLATION][t]) * tech.efficiency
        outputs = ("gen", "gexp") if kind == TechnologyKind.PV else ("heat",)
        terms = [(builder.var(sym, asset.id, t), 1.0) for sym in outputs]
        builder.add_constraint("cap", terms + [(x, -yield_t)], LE, 0.0, asset.id, t)
        return

    heat = builder.var("heat", asset.id, t)
    builder.add_constraint("cap", [(heat, 1.0), (x, -1.0)], LE, 0.0, asset.id, t)

    if kind == TechnologyKind.HEAT_PUMP:
        cop = float(builder.validated.cop_profiles[tech.id][t])
        builder.add_constraint("conv", [(heat, 1.0), (builder.var("elin", asset.id, t), -cop)], EQ, 0.0, asset.id, t)
    elif kind == TechnologyKind.ELECTRIC_BOILER:
        builder.add_constraint(
            "conv", [(heat, 1.0), (builder.var("elin", asset.id, t), -tech.efficiency)], EQ, 0.0, asset.id, t
        )
    elif tech.uses_fuel:
        builder.add_constraint(
            "conv", [(heat, 1.0), (builder.var("fuel", asset.id, t), -tech.efficiency)], EQ, 0.0, asset.id, t
        )
        if builder.has_var("gen", asset.id, t):
            builder.add_constraint(
                "cogen",
                [
                    (builder.var("gen", asset.id, t), 1.0),
                    (builder.var("gexp", asset.id, t), 1.0),
                    (heat, -tech.power_to_heat_ratio),
                ],
                LE, 0.0, asset.id, t,
            )


def add_storage_dynamics(builder: ZenModelBuilder, storage: Asset, t: int) -> None:
    """
    State of charge of one storage from hour t to t + 1, wrapping around the year.

    soc[t+1] = soc[t] + efficiency * charge[t] - discharge[t]
    soc[t] <= capacity, charge and discharge <= power ratio * capacity
    """
    tech = storage.tech
    ratio = tech.storage_power_ratio if tech.storage_power_ratio is not None else DEFAULT_POWER_RATIO
    x = builder.var("x", storage.id)
    soc = builder.var("soc", storage.id, t)
    soc_next = builder.var("soc", storage.id, (t + 1) % builder.horizon)
    charge = [builder.var(sym, storage.id, t) for sym in _charge_symbols(storage)]
    discharge = [builder.var(sym, storage.id, t) for sym in _discharge_symbols(builder, storage)]

    builder.add_constraint(
        "sdyn",
        [(soc_next, 1.0), (soc, -1.0)]
        + [(c, -tech.efficiency) for c in charge]
        + [(d, 1.0) for d in discharge],
        EQ, 0.0, storage.id, t,
    )
    builder.add_constraint("scap", [(soc, 1.0), (x, -1.0)], LE, 0.0, storage.id, t)
    builder.add_constraint("spin", [(c, 1.0) for c in charge] + [(x, -ratio)], LE, 0.0, storage.id, t)
    builder.add_constraint("spout", [(d, 1.0) for d in discharge] + [(x, -ratio)], LE, 0.0, storage.id, t)


def add_roof_limits(builder: ZenModelBuilder) -> None:
    """Roof-mounted capacity of each building type fits its roof area."""
    for building in builder.spec.building_types:
        roof_assets = [
            a for a in builder.assets_of(TechnologyKind.PV, TechnologyKind.SOLAR_THERMAL, location=building.id)
            if a.tech.area_per_kw is not None
        ]
        if roof_assets:
            builder.add_constraint(
                "roof",
                [(builder.var("x", a.id), a.tech.area_per_kw) for a in roof_assets],
                LE, building.count * building.roof_area, asset=building.id, unit="m2",
            )


def add_co2_balance(builder: ZenModelBuilder) -> None:
    """
    Annual CO2 balance.

    Emissions of imports and fuels may not exceed the credit of exports:
    on-site generation exports in full, battery exports times the battery
    efficiency, all at the electricity factor.
    """
    phi_e = builder.spec.economic.el_co2_factor
    generators = builder.electricity_generators()
    batteries = builder.assets_of(TechnologyKind.BATTERY)
    burners = [a for a in builder.assets if a.tech.uses_fuel]

    terms: List[Term] = []
    for t in range(builder.horizon):
        terms.append((builder.var(IMPORT_TOTAL, None, t), phi_e))
        for asset in burners:
            terms.append((builder.var("fuel", asset.id, t), builder.spec.fuel(asset.tech.fuel).co2_factor))
        terms.extend(_sum(builder, "gexp", generators, t, -phi_e))
        for battery in batteries:
            export = builder.var(builder.battery_export_symbol(battery), battery.id, t)
            terms.append((export, -phi_e * battery.tech.efficiency))
    builder.add_constraint("co2", terms, LE, 0.0, unit="gCO2")


def add_export_limit(builder: ZenModelBuilder, limit: float) -> None:
    """Metered export of every hour stays at or below ``limit`` kWh/h."""
    if not limit > 0:
        raise ValueError(f"Export limit must be > 0, got {limit}")
    for t in range(builder.horizon):
        builder.add_constraint("explim", [(builder.var(EXPORT_TOTAL, None, t), 1.0)], LE, limit, t=t)


def assemble_objective(
    builder: ZenModelBuilder, scheme: TariffScheme, economic: EconomicParams
) -> TariffTerms:
    """
    Lifetime cost objective.

    investment + (maintenance + fuel + (spot + retailer) * imports - spot * exports
    + tariff terms) / epsilon. The heating grid cost and the tariff fixed charge
    are reported as constants.

    Returns:
        TariffTerms: What the tariff design added
    """
    inv = 1.0 / builder.epsilon
    spot = builder.ts[SPOT_PRICE]

    for asset in builder.assets:
        x = builder.var("x", asset.id)
        builder.add_objective_term(x, asset.tech.discounted_investment_cost, INVESTMENT)
        builder.add_objective_term(x, inv * asset.tech.annual_maintenance_cost, MAINTENANCE)

    burners = [a for a in builder.assets if a.tech.uses_fuel]
    for t in range(builder.horizon):
        for asset in burners:
            price = builder.spec.fuel(asset.tech.fuel).price
            builder.add_objective_term(builder.var("fuel", asset.id, t), inv * price, FUEL)
        imp = builder.var(IMPORT_TOTAL, None, t)
        exp = builder.var(EXPORT_TOTAL, None, t)
        builder.add_objective_term(imp, inv * float(spot[t]), SPOT)
        builder.add_objective_term(exp, -inv * float(spot[t]), SPOT)
        builder.add_objective_term(imp, inv * economic.retailer_tariff, RETAILER)

    terms = tariff_linear_terms(scheme, builder, builder.scarcity(scheme), scale=inv)

    builder.add_constant(
        HEATING_GRID_CONSTANT, economic.heating_grid_cost if economic.heating_grid_enabled else 0.0
    )
    builder.add_constant(TARIFF_FIXED_CONSTANT, inv * terms.fixed_annual)
    return terms


def build_model(
    spec: Union[NeighborhoodSpec, ValidatedSpec],
    ts: Optional[TimeSeriesSet],
    scheme: TariffScheme,
    options: Optional[ModelOptions] = None,
) -> ModelInstance:
    """
    Build the investment and operation model of one scenario cell.

    Args:
        spec: Neighborhood, validated or not
        ts: Hourly series; defaults to the series a ValidatedSpec was checked against
        scheme: Grid tariff design
        options: Export limit and CO2 switch

    Returns:
        ModelInstance: Model whose metadata records scenario, epsilon and scarcity hours
    """
    options = options or ModelOptions()
    validated = validate_neighborhood(spec, ts)
    ts = ts if ts is not None else validated.series

    builder = ZenModelBuilder(validated, ts, options)
    builder.add_variables()

    for t in range(builder.horizon):
        add_metering(builder, t)
        add_electricity_balance(builder, t)
        for building in builder.spec.building_types:
            add_heat_balance(builder, building, t)
        if builder.heating_grid:
            add_plant_balance(builder, t)
        for asset in builder.assets:
            if asset.tech.is_storage:
                add_storage_dynamics(builder, asset, t)
            else:
                add_technology_constraints(builder, asset, t)

    add_roof_limits(builder)
    if options.co2_constraint:
        add_co2_balance(builder)
    if options.export_limit is not None:
        add_export_limit(builder, options.export_limit)

    terms = assemble_objective(builder, scheme, builder.spec.economic)

    builder.metadata.update(
        {
            "scheme": scheme.type,
            "horizon": builder.horizon,
            "epsilon": builder.epsilon,
            "export_limit": options.export_limit,
            "co2_constraint": options.co2_constraint,
            "fingerprint": builder.spec.fingerprint(),
            "assets": [a.id for a in builder.assets],
            "asset_kinds": {a.id: a.kind.value for a in builder.assets},
            "scarcity_hours": builder.flags.hours.tolist() if builder.flags is not None else [],
            "tariff_fixed_annual": terms.fixed_annual,
        }
    )
    builder.log.info(
        f"Scenario model assembled:\n"
        f"- Tariff: {scheme.type}\n"
        f"- Assets: {len(builder.assets)}\n"
        f"- Export limit: {options.export_limit}\n"
        f"- CO2 constraint: {options.co2_constraint}"
    )
    return builder.build()
