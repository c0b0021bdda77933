"""Unit tests for lifetime discounting."""

import pytest

from src.domain.economics import discount_factor


def test_zero_rate_sums_years():
    assert discount_factor(0.0, 60) == 60.0


def test_zero_lifetime_is_empty_sum():
    assert discount_factor(0.05, 0) == 0.0


def test_annuity_at_five_percent():
    closed_form = (1 - 1.05 ** -60) / 0.05
    assert discount_factor(0.05, 60) == pytest.approx(closed_form, rel=1e-12)
    assert discount_factor(0.05, 60) == pytest.approx(18.929, abs=1e-3)


@pytest.mark.parametrize("rate", [0.01, 0.05, 0.1])
def test_bounded_by_lifetime_and_monotone(rate):
    assert discount_factor(rate, 60) < 60
    assert discount_factor(rate, 61) > discount_factor(rate, 60)
    assert discount_factor(rate + 0.01, 60) < discount_factor(rate, 60)


def test_negative_inputs_rejected():
    with pytest.raises(ValueError):
        discount_factor(-0.01, 60)
    with pytest.raises(ValueError):
        discount_factor(0.05, -1)
