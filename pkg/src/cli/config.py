"""
Scenario documents.

A scenario is one JSON document::

    {
      "neighborhood": {"building_types": [...], "heating_grid_loss": 0.1},
      "technologies": [...],
      "fuels": [...],
      "economics": {...},
      "series": {"path": "series.csv", "columns": {...}, "horizon": 8760},
      "tariff": {"type": "energy"},
      "options": {"export_limit": null, "co2_constraint": true}
    }

Relative series paths are resolved against the document's directory.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

from airflow.utils.log.logging_mixin import LoggingMixin
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from src.domain.types import BuildingType, EconomicParams, FuelSpec, NeighborhoodSpec, TechnologySpec
from src.model.zen import ModelOptions
from src.tariffs.costs import tariff_from_config
from src.tariffs.schemes import SCHEME_TAGS, TariffScheme
from src.timeseries.csv_extractor import SeriesColumn, load_series_csv
from src.timeseries.series import HOURS_PER_YEAR, TimeSeriesSet

from .errors import ConfigError, ConfigSchemaError

logger = LoggingMixin().log

UNION_TAG_ERRORS = {"union_tag_invalid", "union_tag_not_found"}

FROM_CONFIG = "config"


class _Section(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class NeighborhoodSection(_Section):
    building_types: Tuple[BuildingType, ...]
    heating_grid_loss: float = 0.0


class SeriesSection(_Section):
    path: Path
    columns: Dict[str, Union[str, SeriesColumn]]
    horizon: int = Field(default=HOURS_PER_YEAR, ge=1)


class ScenarioOptions(_Section):
    export_limit: Optional[float] = Field(default=None, gt=0)
    co2_constraint: bool = True


class ScenarioConfig(_Section):
    neighborhood: NeighborhoodSection
    technologies: Tuple[TechnologySpec, ...] = ()
    fuels: Tuple[FuelSpec, ...] = ()
    economics: EconomicParams
    series: SeriesSection
    tariff: TariffScheme
    options: ScenarioOptions = ScenarioOptions()

    @model_validator(mode="before")
    @classmethod
    def _flat_energy_price(cls, data: Any) -> Any:
        """The energy design defaults to the economics' flat grid tariff."""
        if not isinstance(data, dict):
            return data
        tariff, economics = data.get("tariff"), data.get("economics")
        if (
            isinstance(tariff, dict)
            and tariff.get("type") == "energy"
            and "energy_price" not in tariff
            and isinstance(economics, dict)
            and "grid_tariff_flat" in economics
        ):
            data = {**data, "tariff": {**tariff, "energy_price": economics["grid_tariff_flat"]}}
        return data

    def neighborhood_spec(self) -> NeighborhoodSpec:
        return NeighborhoodSpec(
            building_types=self.neighborhood.building_types,
            heating_grid_loss=self.neighborhood.heating_grid_loss,
            economic=self.economics,
            technologies=self.technologies,
            fuels=self.fuels,
        )

    def model_options(self, export_limit: Union[float, None, Literal["config"]] = FROM_CONFIG) -> ModelOptions:
        """Model options; the export limit is taken from the document unless given."""
        limit = self.options.export_limit if export_limit == FROM_CONFIG else export_limit
        return ModelOptions(export_limit=limit, co2_constraint=self.options.co2_constraint)

    def scheme(self, tag: Optional[str] = None) -> TariffScheme:
        """The document's tariff, or the default design of ``tag``."""
        if tag is None or tag == self.tariff.type:
            return self.tariff
        return tariff_from_config({"type": tag}, self.economics)

    def load_series(self) -> TimeSeriesSet:
        return load_series_csv(self.series.path, self.series.columns, self.series.horizon)


def json_pointer(loc: Tuple[Union[str, int], ...], error_type: str = "") -> str:
    """
    JSON pointer of a pydantic error location.

    Discriminated-union branches show up in the location as the tag name;
    they are dropped. A bad or missing tag points at the ``type`` member.
    """
    parts: List[str] = [str(p) for p in loc]
    if len(parts) > 1 and parts[0] == "tariff" and parts[1] in SCHEME_TAGS:
        del parts[1]
    if error_type in UNION_TAG_ERRORS:
        parts.append("type")
    escaped = [p.replace("~", "~0").replace("/", "~1") for p in parts]
    return "/" + "/".join(escaped)


def parse_scenario(document: Any, base_dir: Union[str, Path, None] = None) -> ScenarioConfig:
    """
    Validate a scenario document.

    Args:
        document: Decoded JSON document
        base_dir: Directory relative series paths are resolved against

    Returns:
        ScenarioConfig: Validated scenario

    Raises:
        ConfigSchemaError: With one JSON pointer per violation
    """
    try:
        config = ScenarioConfig.model_validate(document)
    except ValidationError as e:
        errors = [(json_pointer(err["loc"], err["type"]), err["msg"]) for err in e.errors()]
        logger.error(f"Scenario document rejected with {len(errors)} schema error(s)")
        raise ConfigSchemaError(errors) from e

    if base_dir is not None and not config.series.path.is_absolute():
        series = config.series.model_copy(update={"path": Path(base_dir) / config.series.path})
        config = config.model_copy(update={"series": series})
    return config


def load_scenario(path: Union[str, Path]) -> ScenarioConfig:
    """
    Read and validate a scenario JSON file.

    Raises:
        ConfigError: If the file cannot be read or is not JSON
        ConfigSchemaError: If the document does not match the schema
    """
    path = Path(path)
    try:
        document = json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        logger.error(f"Error reading scenario {path}: {str(e)}")
        raise ConfigError(f"Cannot read scenario {path}: {str(e)}") from e
    except json.JSONDecodeError as e:
        logger.error(f"Scenario {path} is not valid JSON: {str(e)}")
        raise ConfigError(f"Scenario {path} is not valid JSON at line {e.lineno}: {e.msg}") from e

    config = parse_scenario(document, path.parent)
    logger.info(
        f"Scenario loaded from {path}:\n"
        f"- Building types: {len(config.neighborhood.building_types)}\n"
        f"- Technologies: {len(config.technologies)}\n"
        f"- Tariff: {config.tariff.type}\n"
        f"- Export limit: {config.options.export_limit}"
    )
    return config
