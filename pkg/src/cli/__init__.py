from .config import FROM_CONFIG, ScenarioConfig, json_pointer, load_scenario, parse_scenario
from .errors import ConfigError, ConfigSchemaError
from .runner import (
    EXIT_BACKEND,
    EXIT_CONFIG,
    EXIT_INFEASIBLE,
    EXIT_LIMIT,
    EXIT_OK,
    CellOutcome,
    ComparisonOutcome,
    ScenarioRunner,
    compare_tariffs,
    comparison_tables,
    run_scenario,
)
