"""Unit tests for ex-post tariff evaluation."""

import numpy as np
import pytest

from src.domain.types import EconomicParams
from src.tariffs.costs import hours_above_subscription, tariff_cost_expost, tariff_from_config, tou_prices
from src.tariffs.errors import FlowMismatch, MissingSubscription, NegativeSubscription, TariffError
from src.tariffs.scarcity import ScarcityFlags
from src.tariffs.schemes import (
    DynamicTariff,
    EnergyTariff,
    SubscribedCapacityTariff,
    TimeOfUseTariff,
)


@pytest.fixture
def zero_flows():
    """One day without imports or exports."""
    return np.zeros(24), np.zeros(24)


def test_energy_fixed_plus_volume():
    imports = np.full(100, 100.0)
    cost = tariff_cost_expost(EnergyTariff(), imports, np.zeros(100))
    assert cost == pytest.approx(362.0)


def test_subscribed_splits_at_level():
    cost = tariff_cost_expost(SubscribedCapacityTariff(), np.array([12.0]), np.zeros(1), subscribed=10.0)
    assert cost == pytest.approx(1080.25)


def test_dynamic_prices_flagged_hours():
    flags = ScarcityFlags(np.array([True, False]), 5.0)
    cost = tariff_cost_expost(DynamicTariff(), np.array([5.0, 10.0]), np.zeros(2), flags=flags)
    assert cost == pytest.approx(0.725)


def test_dynamic_export_bonus_can_turn_negative():
    flags = ScarcityFlags(np.array([True, False]), 5.0)
    cost = tariff_cost_expost(DynamicTariff(), np.zeros(2), np.array([10.0, 10.0]), flags=flags)
    assert cost == pytest.approx(-1.0)


def test_zero_flows_leave_fixed_terms(zero_flows):
    imports, exports = zero_flows
    flags = ScarcityFlags.none(24)
    assert tariff_cost_expost(EnergyTariff(), imports, exports) == 137.0
    assert tariff_cost_expost(TimeOfUseTariff(), imports, exports) == 0.0
    assert tariff_cost_expost(SubscribedCapacityTariff(), imports, exports, subscribed=0.0) == 0.0
    assert tariff_cost_expost(DynamicTariff(), imports, exports, flags=flags) == 0.0


def test_dynamic_without_scarcity_is_energy_minus_fixed():
    rng = np.random.default_rng(3)
    imports, exports = rng.uniform(0, 20, 48), rng.uniform(0, 5, 48)
    energy = tariff_cost_expost(EnergyTariff(), imports, exports)
    dynamic = tariff_cost_expost(DynamicTariff(), imports, exports, flags=ScarcityFlags.none(48))
    assert dynamic == pytest.approx(energy - 137.0)


def test_tou_prices_follow_bands():
    prices = tou_prices(TimeOfUseTariff(), 48)
    assert prices[8] == 0.0492
    assert prices[2] == 0.0123
    assert prices[12] == 0.0246
    assert prices[24 + 19] == 0.0492


def test_tou_cost_one_kwh_per_hour():
    # 6 peak, 6 low, 12 medium hours per day
    cost = tariff_cost_expost(TimeOfUseTariff(), np.ones(24), np.zeros(24))
    assert cost == pytest.approx(6 * 0.0492 + 6 * 0.0123 + 12 * 0.0246)


def test_subscribed_level_errors():
    scheme = SubscribedCapacityTariff()
    with pytest.raises(MissingSubscription):
        tariff_cost_expost(scheme, np.ones(3), np.zeros(3))
    with pytest.raises(NegativeSubscription) as exc_info:
        tariff_cost_expost(scheme, np.ones(3), np.zeros(3), subscribed=-1.0)
    assert exc_info.value.subscribed == -1.0


def test_dynamic_needs_flags():
    with pytest.raises(TariffError):
        tariff_cost_expost(DynamicTariff(), np.ones(3), np.zeros(3))


def test_length_mismatch():
    with pytest.raises(FlowMismatch) as exc_info:
        tariff_cost_expost(EnergyTariff(), np.ones(3), np.zeros(4))
    assert exc_info.value.lengths == (3, 4, 3)


def test_hours_above_subscription():
    imports = np.array([5.0, 10.0, 10.0000001, 12.0])
    assert hours_above_subscription(imports, 10.0) == 1
    assert hours_above_subscription(imports, 0.0) == 4
    with pytest.raises(NegativeSubscription):
        hours_above_subscription(imports, -0.5)


def test_from_config_energy_uses_flat_grid_tariff():
    economic = EconomicParams(retailer_tariff=0.005, grid_tariff_flat=0.03)
    scheme = tariff_from_config({"type": "energy"}, economic)
    assert isinstance(scheme, EnergyTariff)
    assert scheme.energy_price == 0.03


def test_from_config_overrides():
    scheme = tariff_from_config({"type": "subscribed", "capacity_price": 90.0})
    assert isinstance(scheme, SubscribedCapacityTariff)
    assert scheme.capacity_price == 90.0
    assert scheme.above_price == 0.1
