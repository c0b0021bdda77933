"""
Write the example scenario and its synthetic series.

    python scripts/generate_fixtures.py --out data --horizon 8760
"""

import argparse
import json
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).parent.parent))

from airflow.utils.log.logging_mixin import LoggingMixin

from src.cli.example import EXAMPLE_BUILDINGS, example_scenario
from src.timeseries.csv_extractor import write_series_csv
from src.timeseries.series import HOURS_PER_YEAR
from src.timeseries.synthetic import DEFAULT_BUILDINGS, synthetic_year

logger = LoggingMixin().log


def main() -> None:
    parser = argparse.ArgumentParser(description="Write the example scenario and its series")
    parser.add_argument("--out", default="data", help="output directory")
    parser.add_argument("--horizon", type=int, default=HOURS_PER_YEAR, help="number of hours")
    parser.add_argument("--seed", type=int, default=0, help="noise seed")
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    buildings = {name: DEFAULT_BUILDINGS[name] for name in EXAMPLE_BUILDINGS}
    write_series_csv(synthetic_year(args.horizon, buildings, args.seed), out / "series.csv")
    document = example_scenario("series.csv", args.horizon)
    (out / "scenario.json").write_text(json.dumps(document, indent=2) + "\n", encoding="utf-8")
    logger.info(f"Scenario and series for {args.horizon} hours written to {out}")


if __name__ == "__main__":
    main()
