"""Tests for scenario documents."""

import json

import pytest

from src.cli.config import json_pointer, load_scenario, parse_scenario
from src.cli.errors import ConfigError, ConfigSchemaError
from src.cli.example import EXAMPLE_TECHNOLOGIES, example_scenario
from src.tariffs.schemes import DynamicTariff, EnergyTariff


@pytest.fixture
def document():
    return example_scenario("series.csv", horizon=48)


def test_pointer_drops_union_branch():
    assert json_pointer(("tariff", "tou", "peak")) == "/tariff/peak"
    assert json_pointer(("tariff",), "union_tag_invalid") == "/tariff/type"
    assert json_pointer(("technologies", 3, "kind")) == "/technologies/3/kind"
    assert json_pointer(("series", "columns", "a/b")) == "/series/columns/a~1b"


def test_unknown_tariff_tag(document):
    document["tariff"] = {"type": "flat"}
    with pytest.raises(ConfigSchemaError) as exc_info:
        parse_scenario(document)
    assert exc_info.value.pointers == ["/tariff/type"]


def test_every_violation_reported(document):
    document["tariff"] = {"type": "tou", "peak": "high"}
    del document["economics"]["retailer_tariff"]
    document["technologies"][0]["colour"] = "blue"
    with pytest.raises(ConfigSchemaError) as exc_info:
        parse_scenario(document)
    pointers = exc_info.value.pointers
    assert "/tariff/peak" in pointers
    assert "/economics/retailer_tariff" in pointers
    assert "/technologies/0/colour" in pointers


def test_example_documents_are_independent(document):
    document["technologies"][0]["colour"] = "blue"
    document["fuels"][0]["price"] = 9.0
    document["economics"]["retailer_tariff"] = 1.0

    fresh = example_scenario("series.csv", horizon=48)
    assert "colour" not in fresh["technologies"][0]
    assert "colour" not in EXAMPLE_TECHNOLOGIES[0]
    assert fresh["fuels"][0]["price"] == 0.05
    assert fresh["economics"]["retailer_tariff"] == 0.005
    parse_scenario(fresh)


def test_energy_price_defaults_to_flat_grid_tariff(document):
    document["economics"]["grid_tariff_flat"] = 0.03
    config = parse_scenario(document)
    assert config.tariff == EnergyTariff(energy_price=0.03)
    assert config.scheme("dynamic") == DynamicTariff()
    assert config.scheme("energy") is config.tariff


def test_export_option(document):
    document["options"]["export_limit"] = 100
    config = parse_scenario(document)
    assert config.model_options().export_limit == 100.0
    assert config.model_options(None).export_limit is None
    assert config.model_options(50.0).export_limit == 50.0

    document["options"]["export_limit"] = 0
    with pytest.raises(ConfigSchemaError) as exc_info:
        parse_scenario(document)
    assert exc_info.value.pointers == ["/options/export_limit"]


def test_relative_series_path(document, tmp_path):
    config = parse_scenario(document, tmp_path)
    assert config.series.path == tmp_path / "series.csv"
    document["series"]["path"] = str(tmp_path / "elsewhere.csv")
    assert parse_scenario(document, "/unused").series.path == tmp_path / "elsewhere.csv"


def test_load_scenario(document, tmp_path):
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(document), encoding="utf-8")
    config = load_scenario(path)
    assert len(config.neighborhood.building_types) == 3
    assert config.series.path == tmp_path / "series.csv"


def test_unreadable_documents(tmp_path):
    with pytest.raises(ConfigError) as exc_info:
        load_scenario(tmp_path / "missing.json")
    assert "Cannot read" in str(exc_info.value)

    broken = tmp_path / "broken.json"
    broken.write_text('{"tariff": ', encoding="utf-8")
    with pytest.raises(ConfigError) as exc_info:
        load_scenario(broken)
    assert "not valid JSON" in str(exc_info.value)


def test_load_series(scenario_file):
    config = load_scenario(scenario_file())
    ts = config.load_series()
    assert ts.horizon == 48
    assert "student_housing_el" in ts
