"""Unit tests for post-solve metrics."""

import numpy as np
import pytest

from src.domain.economics import discount_factor
from src.domain.types import EconomicParams
from src.analysis.metrics import dso_revenue, duration_curve, peak_import
from src.tariffs.scarcity import ScarcityFlags
from src.tariffs.schemes import DynamicTariff, EnergyTariff, SubscribedCapacityTariff


@pytest.fixture
def economic():
    return EconomicParams(retailer_tariff=0.005)


def test_duration_curve_sorts_descending():
    np.testing.assert_array_equal(duration_curve([1.0, 3.0, 2.0]), [3.0, 2.0, 1.0])
    np.testing.assert_array_equal(duration_curve(np.full(5, 2.0)), np.full(5, 2.0))


def test_duration_curve_keeps_multiset():
    net = np.random.default_rng(11).normal(0, 50, 8760)
    curve = duration_curve(net)
    assert curve[0] == net.max()
    assert np.all(np.diff(curve) <= 0)
    np.testing.assert_array_equal(np.sort(curve), np.sort(net))


def test_duration_curve_scales():
    net = np.random.default_rng(2).normal(0, 10, 200)
    np.testing.assert_allclose(duration_curve(3.5 * net), 3.5 * duration_curve(net))


def test_peak_import():
    assert peak_import(np.ones(24)) == 1.0
    assert peak_import(np.zeros(24)) == 0.0
    spike = np.full(8760, 310.0)
    spike[4000] = 622.2
    assert peak_import(spike) == 622.2


def test_energy_revenue_over_lifetime(economic):
    imports = np.full(100, 100.0)
    revenue = dso_revenue(imports, np.zeros(100), EnergyTariff(), None, None, economic)
    assert revenue == pytest.approx(362.0 * discount_factor(0.05, 60))
    assert revenue == pytest.approx(6852.4, abs=0.1)


def test_dynamic_revenue_without_flows(economic):
    revenue = dso_revenue(np.zeros(24), np.zeros(24), DynamicTariff(), ScarcityFlags.none(24), None, economic)
    assert revenue == 0.0


def test_subscribed_revenue_below_subscription(economic):
    imports = np.full(24, 4.0)
    revenue = dso_revenue(imports, np.zeros(24), SubscribedCapacityTariff(), None, 5.0, economic)
    epsilon = discount_factor(0.05, 60)
    assert revenue == pytest.approx(epsilon * (108.0 * 5.0 + 0.005 * 96.0))
