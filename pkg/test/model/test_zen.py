"""
Tests for the neighborhood investment and operation model.

Every model here is solved with the in-process scipy backend over two days.
"""

import dataclasses

import numpy as np
import pytest

from src.domain.economics import discount_factor
from src.domain.types import EconomicParams, FuelSpec, TechnologySpec
from src.model.symbols import SYMBOLS, dimensional_audit
from src.model.zen import TARIFF, TARIFF_FIXED_CONSTANT, ModelOptions, build_model
from src.solve.result import SolveStatus
from src.solve.solver import solve
from src.tariffs.costs import tariff_cost_expost
from src.tariffs.scarcity import ScarcityFlags
from src.tariffs.schemes import (
    DynamicTariff,
    EnergyTariff,
    SubscribedCapacityTariff,
    TimeOfUseTariff,
)

HORIZON = 48
EPSILON = discount_factor(0.05, 60)
NO_CO2 = ModelOptions(co2_constraint=False)


@pytest.fixture
def daylight():
    """Insolation of 1 kWh/m² from 6:00 to 17:59, zero otherwise."""
    hours = np.arange(HORIZON) % 24
    return np.where((hours >= 6) & (hours < 18), 1.0, 0.0)


@pytest.fixture
def neighborhood_battery_tech():
    return {
        "id": "cbat",
        "kind": "battery",
        "level": "neighborhood",
        "carrier": "electricity_storage",
        "discounted_investment_cost": 40.0,
        "efficiency": 0.9,
    }


def values_of(model, result, symbol):
    x = model.vector(result.variable_values)
    return np.array(list(model.values_of(symbol, x).values()))


def test_constant_load_imports_every_hour(make_spec, make_series):
    spec = make_spec(retailer=0.005)
    model = build_model(spec, make_series(), EnergyTariff(), NO_CO2)
    result = solve(model, "scipy")

    assert result.status == SolveStatus.OPTIMAL
    np.testing.assert_allclose(values_of(model, result, "imp_tot"), 1.0, atol=1e-9)
    expected = HORIZON * (0.04 + 0.0225 + 0.005) / EPSILON
    assert result.objective_value == pytest.approx(expected, rel=1e-9)
    assert model.constants[TARIFF_FIXED_CONSTANT] == pytest.approx(137.0 / EPSILON)


def test_building_count_scales_loads(make_spec, make_series):
    model = build_model(make_spec(count=3), make_series(el_load=2.0), EnergyTariff(), NO_CO2)
    result = solve(model, "scipy")
    np.testing.assert_allclose(values_of(model, result, "imp_tot"), 6.0, atol=1e-9)


def test_co2_balance_needs_exports(make_spec, make_series):
    model = build_model(make_spec(), make_series(), EnergyTariff())
    assert "co2" in model.row_index
    assert solve(model, "scipy").status == SolveStatus.INFEASIBLE


def test_pv_offsets_imports(make_spec, make_series, pv_tech, daylight):
    model = build_model(make_spec([pv_tech]), make_series(insolation=daylight), EnergyTariff())
    result = solve(model, "scipy")

    assert result.status == SolveStatus.OPTIMAL
    # 24 dark hours import 1 kWh, 24 sunny hours must export as much
    assert result.variable_values["x[pv@apt]"] == pytest.approx(2.0, rel=1e-6)
    imports = values_of(model, result, "imp_tot").sum()
    exports = values_of(model, result, "exp_tot").sum()
    assert exports == pytest.approx(imports, rel=1e-6)


def test_export_limit_caps_every_hour(make_spec, make_series, pv_tech, battery_tech, daylight):
    series = make_series(insolation=daylight)
    options = ModelOptions(export_limit=0.5)

    without_storage = build_model(make_spec([pv_tech]), series, EnergyTariff(), options)
    assert solve(without_storage, "scipy").status == SolveStatus.INFEASIBLE

    model = build_model(make_spec([pv_tech, battery_tech]), series, EnergyTariff(), options)
    assert sum(name.startswith("explim[") for name in model.row_names) == HORIZON
    result = solve(model, "scipy")
    assert result.status == SolveStatus.OPTIMAL
    assert values_of(model, result, "exp_tot").max() <= 0.5 + 1e-7
    assert result.variable_values["x[bat@apt]"] > 0


def test_battery_cannot_charge_beyond_onsite_generation(make_spec, make_series, pv_tech, battery_tech, daylight):
    model = build_model(make_spec([pv_tech, battery_tech]), make_series(insolation=daylight), EnergyTariff())
    result = solve(model, "scipy")
    x = model.vector(result.variable_values)
    charge = np.array(list(model.values_of("ch", x).values()))
    generation = np.array(list(model.values_of("gen", x).values()))
    assert np.all(charge <= generation + 1e-7)


def test_gas_boiler_covers_heat(make_spec, make_series, gas_boiler_tech):
    spec = make_spec([gas_boiler_tech], [{"id": "gas", "price": 0.05}])
    model = build_model(spec, make_series(heat_load=3.0), EnergyTariff(), NO_CO2)
    result = solve(model, "scipy")

    assert result.status == SolveStatus.OPTIMAL
    assert result.variable_values["x[gb@apt]"] == pytest.approx(3.0, rel=1e-6)
    np.testing.assert_allclose(values_of(model, result, "fuel"), 3.0 / 0.9, rtol=1e-6)


def test_subscribed_split_and_expost_consistency(make_spec, make_series):
    load = np.where(np.arange(HORIZON) % 24 == 19, 8.0, 2.0)
    # cheap capacity: subscribing above the 2 kW base would not pay for two peak hours
    scheme = SubscribedCapacityTariff(capacity_price=0.5)
    model = build_model(make_spec(), make_series(el_load=load), scheme, NO_CO2)
    result = solve(model, "scipy")
    assert result.status == SolveStatus.OPTIMAL

    x = model.vector(result.variable_values)
    c_sub = max(result.variable_values["c_sub"], 0.0)
    assert c_sub == pytest.approx(2.0, rel=1e-6)
    imports = values_of(model, result, "imp_tot")
    below = values_of(model, result, "below")
    np.testing.assert_allclose(below, np.minimum(imports, c_sub), atol=1e-6)

    annual = tariff_cost_expost(scheme, imports, values_of(model, result, "exp_tot"), subscribed=c_sub)
    assert model.objective_parts[TARIFF] @ x * EPSILON == pytest.approx(annual, rel=1e-6)


@pytest.mark.parametrize("scheme", [EnergyTariff(), TimeOfUseTariff(), DynamicTariff()])
def test_expost_matches_objective_share(make_spec, make_series, pv_tech, daylight, scheme):
    series = make_series(insolation=daylight, el_load=np.linspace(1.0, 3.0, HORIZON))
    model = build_model(make_spec([pv_tech]), series, scheme)
    result = solve(model, "scipy")
    x = model.vector(result.variable_values)

    flagged = np.zeros(HORIZON, dtype=bool)
    flagged[model.metadata["scarcity_hours"]] = True
    flags = ScarcityFlags(flagged, 0.0)
    imports = values_of(model, result, "imp_tot")
    exports = values_of(model, result, "exp_tot")
    annual = tariff_cost_expost(scheme, imports, exports, flags=flags) - scheme.fixed_annual_charge
    assert model.objective_parts[TARIFF] @ x * EPSILON == pytest.approx(annual, rel=1e-6, abs=1e-9)


def test_dynamic_flags_recorded(make_spec, make_series):
    model = build_model(make_spec(), make_series(), DynamicTariff(), NO_CO2)
    # regional load ascends, so the last ceil(0.05 * 48) hours are scarce
    assert model.metadata["scarcity_hours"] == [45, 46, 47]


def test_metadata(make_spec, make_series, pv_tech):
    model = build_model(make_spec([pv_tech]), make_series(), TimeOfUseTariff(), ModelOptions(export_limit=100))
    assert model.metadata["scheme"] == "tou"
    assert model.metadata["horizon"] == HORIZON
    assert model.metadata["export_limit"] == 100
    assert model.metadata["asset_kinds"] == {"pv@apt": "pv"}
    assert model.metadata["epsilon"] == pytest.approx(EPSILON)
    assert model.constants[TARIFF_FIXED_CONSTANT] == 0.0


def test_build_is_deterministic(make_spec, make_series, pv_tech, battery_tech):
    spec = make_spec([pv_tech, battery_tech])
    first = build_model(spec, make_series(), SubscribedCapacityTariff())
    second = build_model(spec, make_series(), SubscribedCapacityTariff())
    assert first.var_names == second.var_names
    assert first.row_names == second.row_names
    assert (first.matrix != second.matrix).nnz == 0
    np.testing.assert_array_equal(first.objective, second.objective)


def test_capacity_bounded_by_max_capacity(make_spec, make_series, pv_tech):
    model = build_model(make_spec([{**pv_tech, "max_capacity": 5.0}]), make_series(), EnergyTariff())
    assert model.var_ub[model.column("x[pv@apt]")] == 5.0
    assert np.all(model.var_lb == 0.0)


def test_symbol_inventory(make_spec, make_series, pv_tech, battery_tech, neighborhood_battery_tech, gas_boiler_tech):
    spec = make_spec(
        [pv_tech, battery_tech, neighborhood_battery_tech, gas_boiler_tech],
        [{"id": "gas", "price": 0.05}],
    )
    model = build_model(spec, make_series(), SubscribedCapacityTariff())
    holders = {
        "TechnologySpec": TechnologySpec,
        "EconomicParams": EconomicParams,
        "FuelSpec": FuelSpec,
        "TimeOfUseTariff": TimeOfUseTariff,
        "DynamicTariff": DynamicTariff,
    }

    for symbol, place in SYMBOLS.items():
        if place.startswith("var:"):
            assert place[4:] in model.symbols, symbol
        elif place.startswith("series:"):
            assert place[7:] in make_series(), symbol
        elif place.startswith("ScarcityFlags."):
            assert place.split(".")[1] in {f.name for f in dataclasses.fields(ScarcityFlags)}
        else:
            holder, attribute = place.split(".")
            assert attribute in holders[holder].model_fields, symbol


def test_dimensional_audit_is_clean(make_spec, make_series, pv_tech, battery_tech, gas_boiler_tech):
    spec = make_spec(
        [{**pv_tech, "area_per_kw": 6.0}, battery_tech, gas_boiler_tech],
        [{"id": "gas", "price": 0.05}],
        roof_area=100.0,
    )
    model = build_model(spec, make_series(), SubscribedCapacityTariff(), ModelOptions(export_limit=50))
    assert "roof[apt]" in model.row_index
    assert dimensional_audit(model) == []
