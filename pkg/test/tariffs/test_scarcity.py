"""Unit tests for scarcity flags and time-of-use bands."""

import numpy as np
import pytest

from src.tariffs.scarcity import ScarcityFlags, TouBand, scarcity_flags, tou_band


def test_ascending_load_flags_last_hours():
    flags = scarcity_flags(np.arange(100, dtype=float), 0.05)
    assert flags.hours.tolist() == [95, 96, 97, 98, 99]
    assert flags.threshold == 95.0


def test_ties_go_to_earlier_hours():
    flags = scarcity_flags(np.full(100, 3.0), 0.05)
    assert flags.hours.tolist() == [0, 1, 2, 3, 4]


def test_full_year_count():
    rng = np.random.default_rng(0)
    flags = scarcity_flags(rng.uniform(3000, 9000, 8760), 0.05)
    assert flags.count == 438
    assert len(flags) == 8760


def test_count_rounds_up():
    # 0.07 * 100 is 7.000000000000001 in floating point
    assert scarcity_flags(np.arange(100, dtype=float), 0.07).count == 7
    assert scarcity_flags(np.arange(10, dtype=float), 0.05).count == 1


@pytest.mark.parametrize("alpha", [0.001, 2.0, 1e6])
def test_scale_invariant(alpha):
    load = np.random.default_rng(5).uniform(0, 100, 500)
    base = scarcity_flags(load, 0.05)
    scaled = scarcity_flags(alpha * load, 0.05)
    np.testing.assert_array_equal(base.flags, scaled.flags)


def test_threshold_is_smallest_flagged_load():
    load = np.array([1.0, 9.0, 4.0, 7.0, 2.0, 8.0])
    flags = scarcity_flags(load, 0.5)
    assert flags.hours.tolist() == [1, 3, 5]
    assert flags.threshold == 7.0


def test_invalid_inputs():
    with pytest.raises(ValueError):
        scarcity_flags(np.array([]), 0.05)
    with pytest.raises(ValueError):
        scarcity_flags(np.ones(10), 0.0)
    with pytest.raises(ValueError):
        scarcity_flags(np.ones(10), 1.0)


def test_no_flags():
    flags = ScarcityFlags.none(24)
    assert flags.count == 0
    assert len(flags) == 24


@pytest.mark.parametrize(
    "hour, band",
    [(8, TouBand.PEAK), (2, TouBand.LOW), (12, TouBand.MED), (7, TouBand.PEAK), (10, TouBand.MED),
     (20, TouBand.PEAK), (21, TouBand.MED), (23, TouBand.LOW), (5, TouBand.MED)],
)
def test_tou_band(hour, band):
    assert tou_band(hour) == band


def test_bands_partition_day():
    bands = [tou_band(h) for h in range(24)]
    assert bands.count(TouBand.PEAK) == 6
    assert bands.count(TouBand.LOW) == 6
    assert bands.count(TouBand.MED) == 12


def test_tou_band_rejects_hour_outside_day():
    with pytest.raises(ValueError):
        tou_band(24)
