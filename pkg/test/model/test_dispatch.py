"""
Dispatch behaviour of solved neighborhood models.

Each scenario is small enough for the scipy backend and is checked against
arithmetic done by hand or an exhaustive search over discretized storage levels.
"""

import itertools

import numpy as np
import pytest

from src.domain.economics import discount_factor
from src.model.zen import ModelOptions, build_model
from src.solve.result import SolveStatus
from src.solve.solver import solve
from src.tariffs.costs import tariff_cost_expost
from src.tariffs.scarcity import TouBand, tou_band
from src.tariffs.schemes import DynamicTariff, EnergyTariff, SubscribedCapacityTariff, TimeOfUseTariff

HORIZON = 48
EPSILON = discount_factor(0.05, 60)
ENERGY_PRICE = EnergyTariff().energy_price
NO_CO2 = ModelOptions(co2_constraint=False)
STEP = 0.25


@pytest.fixture
def sunny_hours():
    """Insolation of 1 kWh/m² from 6:00 to 17:59, zero otherwise."""
    hours = np.arange(HORIZON) % 24
    return np.where((hours >= 6) & (hours < 18), 1.0, 0.0)


@pytest.fixture
def cheap_battery():
    """Battery priced well below what one day of price spread earns per kWh."""

    def _make(efficiency=0.95, cost=1e-4, **extra):
        return {
            "id": "bat",
            "kind": "battery",
            "level": "building",
            "carrier": "electricity_storage",
            "discounted_investment_cost": cost,
            "efficiency": efficiency,
            "storage_power_ratio": 1.0,
            **extra,
        }

    return _make


def solved(spec, series, scheme, options=NO_CO2):
    model = build_model(spec, series, scheme, options)
    result = solve(model, "scipy")
    assert result.status == SolveStatus.OPTIMAL
    return model, result


def flow(model, result, symbol, asset=None):
    """Hourly values of ``symbol``, restricted to one asset when given."""
    x = model.vector(result.variable_values)
    values = model.values_of(symbol, x)
    if asset is not None:
        values = {name: v for name, v in values.items() if name.startswith(f"{symbol}[{asset}]")}
    return np.array(list(values.values()))


def storage_levels(horizon, top):
    """Every cyclic state-of-charge path on the discretization grid, one row per path."""
    grid = np.arange(0.0, top + STEP / 2, STEP)
    levels = np.array(list(itertools.product(grid, repeat=horizon)))
    return levels, np.roll(levels, -1, axis=1) - levels


def test_heating_grid_delivery_covers_losses(make_spec, make_series):
    boiler = {
        "id": "neb",
        "kind": "electric_boiler",
        "level": "neighborhood",
        "carrier": "heat",
        "discounted_investment_cost": 10.0,
        "efficiency": 0.98,
    }
    spec = make_spec([boiler], heating_grid=True).model_copy(update={"heating_grid_loss": 0.1})
    model, result = solved(spec, make_series(el_load=0.0, heat_load=10.0), EnergyTariff())

    np.testing.assert_allclose(flow(model, result, "elin", "neb"), 10.0 / ((1 - 0.1) * 0.98), rtol=1e-7)
    np.testing.assert_allclose(flow(model, result, "hgd", "apt"), 10.0 / 0.9, rtol=1e-7)
    np.testing.assert_allclose(flow(model, result, "imp_tot"), 10.0 / (0.9 * 0.98), rtol=1e-7)
    assert result.variable_values["x[neb]"] == pytest.approx(10.0 / 0.9, rel=1e-7)


def test_battery_state_of_charge_after_ten_charging_hours(make_spec, make_series, cheap_battery):
    # nothing to serve for ten hours, then 4.5 kWh in each of two scarce hours
    load = np.r_[np.zeros(10), 4.5, 4.5]
    regional = np.r_[np.zeros(10), 1.0, 1.0]
    series = make_series(horizon=12, el_load=load, regional_load=regional)
    scheme = DynamicTariff(scarcity_fraction=0.1, export_bonus=0.0)
    model, result = solved(make_spec([cheap_battery(efficiency=0.9, cost=1e-3)]), series, scheme)

    soc = flow(model, result, "soc", "bat@apt")
    charged = flow(model, result, "gb_imp", "bat@apt")
    assert soc[10] - soc[0] == pytest.approx(9.0, abs=1e-6)
    assert charged[:10].sum() == pytest.approx(10.0, rel=1e-6)
    assert result.variable_values["x[bat@apt]"] == pytest.approx(9.0, rel=1e-6)
    np.testing.assert_allclose(flow(model, result, "imp_tot")[10:], 0.0, atol=1e-7)


def test_heat_storage_matches_exhaustive_search(make_spec, make_series):
    load = np.full(3, 3.0)
    spot = np.array([0.0, 0.0, 10.0])
    eta, boiler_cost, storage_cost = 0.9, 0.01, 0.01
    technologies = [
        {"id": "eb", "kind": "electric_boiler", "level": "building", "carrier": "heat",
         "discounted_investment_cost": boiler_cost, "efficiency": 1.0},
        {"id": "hs", "kind": "heat_storage", "level": "building", "carrier": "heat_storage",
         "discounted_investment_cost": storage_cost, "efficiency": eta, "storage_power_ratio": 1.0},
    ]
    series = make_series(horizon=3, el_load=0.0, heat_load=load, spot=spot)
    model, result = solved(make_spec(technologies), series, EnergyTariff())

    levels, net = storage_levels(3, 4.0)
    charge = np.where(net > 0, net / eta, 0.0)
    discharge = np.where(net < 0, -net, 0.0)
    heat = load + charge - discharge
    capacity = np.maximum.reduce([levels.max(axis=1), charge.max(axis=1), discharge.max(axis=1)])
    cost = (
        boiler_cost * heat.max(axis=1)
        + storage_cost * capacity
        + heat @ (spot + ENERGY_PRICE) / EPSILON
    )
    best = cost[np.all(heat >= 0, axis=1)].min()

    assert result.objective_value <= best + 1e-7
    assert best - result.objective_value <= 1e-6
    # production moves out of the expensive hour
    assert flow(model, result, "heat", "eb@apt")[2] == pytest.approx(0.0, abs=1e-7)
    assert result.variable_values["x[hs@apt]"] == pytest.approx(3.0, rel=1e-6)


@pytest.mark.parametrize("seed", range(20))
def test_battery_dispatch_matches_exhaustive_search(make_spec, make_series, cheap_battery, seed):
    rng = np.random.default_rng(seed)
    horizon = 3
    load = rng.uniform(0.5, 1.5, horizon)
    # narrow spot band: charging always costs more than an export earns
    spot = rng.uniform(0.03, 0.05, horizon)
    eta = rng.uniform(0.85, 1.0)
    battery_cost = rng.uniform(1e-5, 1e-3)
    series = make_series(horizon=horizon, el_load=load, spot=spot)
    model, result = solved(make_spec([cheap_battery(efficiency=eta, cost=battery_cost)]), series, EnergyTariff())

    # an optimal path starts empty and never holds more than two hours of load
    levels, net = storage_levels(horizon, 3.0)
    charge = np.where(net > 0, net / eta, 0.0)
    discharge = np.where(net < 0, -net, 0.0)
    to_load = np.minimum(discharge, load)
    exports = discharge - to_load
    imports = load - to_load + charge
    capacity = np.maximum.reduce([levels.max(axis=1), charge.max(axis=1), discharge.max(axis=1)])
    price = spot + ENERGY_PRICE
    cost = battery_cost * capacity + (imports @ price - exports @ spot) / EPSILON
    best = cost.min()

    # rounding an optimal path to the grid moves each hourly net flow by at most one step
    bound = STEP / eta * (horizon * price.max() / EPSILON + battery_cost)
    assert result.objective_value <= best + 1e-7
    assert best - result.objective_value <= bound + 1e-7


def test_subscription_matches_sweep(make_spec, make_series):
    rng = np.random.default_rng(3)
    load = np.round(rng.uniform(2.0, 5.0, HORIZON), 1)
    scheme = SubscribedCapacityTariff(capacity_price=0.5)
    model, result = solved(make_spec(), make_series(el_load=load), scheme)

    imports = flow(model, result, "imp_tot")
    np.testing.assert_allclose(imports, load, atol=1e-7)
    no_exports = np.zeros(HORIZON)
    levels = np.round(np.arange(0.0, load.max() + 0.1, 0.1), 1)
    sweep = [tariff_cost_expost(scheme, imports, no_exports, subscribed=c) for c in levels]
    best = levels[int(np.argmin(sweep))]

    c_sub = max(result.variable_values["c_sub"], 0.0)
    assert abs(c_sub - best) <= 0.1 + 1e-6
    assert tariff_cost_expost(scheme, imports, no_exports, subscribed=c_sub) <= min(sweep) + 1e-9


def test_dynamic_tariff_moves_imports_out_of_scarce_hours(make_spec, make_series, cheap_battery):
    spec = make_spec([cheap_battery()])
    series = make_series()
    energy_model, energy = solved(spec, series, EnergyTariff())
    model, result = solved(spec, series, DynamicTariff(export_bonus=0.0))

    scarce = np.zeros(HORIZON, dtype=bool)
    scarce[model.metadata["scarcity_hours"]] = True
    assert scarce.sum() == 3
    imports = flow(model, result, "imp_tot")
    np.testing.assert_allclose(imports[scarce], 0.0, atol=1e-7)

    energy_peak = flow(energy_model, energy, "imp_tot").max()
    assert energy_peak == pytest.approx(1.0, rel=1e-7)
    # the stored energy is bought back in ordinary hours, raising their peak
    assert imports[~scarce].max() > energy_peak + 1e-6


def test_time_of_use_charges_in_low_hours(make_spec, make_series, cheap_battery):
    spec = make_spec([cheap_battery()])
    series = make_series()
    model, result = solved(spec, series, TimeOfUseTariff())
    energy_model, energy = solved(spec, series, EnergyTariff())

    bands = np.array([tou_band(t % 24) for t in range(HORIZON)])
    charged = flow(model, result, "gb_imp", "bat@apt") + flow(model, result, "ch", "bat@apt")
    assert charged[bands == TouBand.LOW].sum() > charged[bands == TouBand.PEAK].sum() + 1e-6
    assert charged[bands == TouBand.PEAK].sum() == pytest.approx(0.0, abs=1e-7)

    tou_total = result.objective_value + model.objective_constant
    energy_total = energy.objective_value + energy_model.objective_constant
    assert tou_total <= energy_total


def test_export_limit_grows_the_battery(make_spec, make_series, pv_tech, battery_tech, sunny_hours):
    spec = make_spec([pv_tech, battery_tech])
    series = make_series(insolation=sunny_hours)
    free_model, free = solved(spec, series, EnergyTariff(), ModelOptions())
    capped_model, capped = solved(spec, series, EnergyTariff(), ModelOptions(export_limit=0.5))

    assert flow(capped_model, capped, "exp_tot").max() <= 0.5 + 1e-6
    assert free.variable_values["x[bat@apt]"] == pytest.approx(0.0, abs=1e-7)
    assert capped.variable_values["x[bat@apt]"] > free.variable_values["x[bat@apt]"] + 1e-6
