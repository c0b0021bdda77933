"""
Command line entry point.

    python -m src.cli run --config scenario.json --scheme tou --export-limit 100
    python -m src.cli compare --config scenario.json --jobs 4
"""

import argparse
import sys
from typing import List, Literal, Optional, Union

from airflow.utils.log.logging_mixin import LoggingMixin

from src.domain.errors import DomainError
from src.solve.base_backend import BackendConfig
from src.solve.solver import BACKENDS
from src.tariffs.schemes import SCHEME_TAGS
from src.timeseries.errors import TimeSeriesError

from .config import FROM_CONFIG
from .errors import ConfigError
from .runner import EXIT_CONFIG, compare_tariffs, run_scenario

logger = LoggingMixin().log


def export_limit_arg(text: str) -> Union[float, None, Literal["config"]]:
    """``none``, a positive number of kWh/h, or ``config`` for the document's option."""
    if text.lower() == FROM_CONFIG:
        return FROM_CONFIG
    if text.lower() == "none":
        return None
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected kWh/h, 'none' or 'config', got {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError(f"export limit must be positive, got {text}")
    return value


def schemes_arg(text: str) -> List[str]:
    schemes = [s.strip() for s in text.split(",") if s.strip()]
    unknown = [s for s in schemes if s not in SCHEME_TAGS]
    if unknown or not schemes:
        raise argparse.ArgumentTypeError(f"unknown tariff(s) {unknown}, expected from {list(SCHEME_TAGS)}")
    return schemes


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zen-tariffs", description="Investment and operation of a zero emission neighborhood under grid tariffs"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="scenario JSON document")
    common.add_argument("--backend", choices=sorted(BACKENDS), default=None, help="solver backend")
    common.add_argument("--out", default=None, help="output directory")
    common.add_argument("--time-limit", type=float, default=None, help="solver time limit (s)")
    common.add_argument("--keep-lp", action="store_true", help="keep the LP file of every cell")

    run = commands.add_parser("run", parents=[common], help="run one tariff / export cell")
    run.add_argument("--scheme", choices=SCHEME_TAGS, default=None, help="tariff; the document's by default")
    run.add_argument(
        "--export-limit", type=export_limit_arg, default=FROM_CONFIG, help="kWh/h, 'none' or 'config'; the document's by default"
    )

    compare = commands.add_parser("compare", parents=[common], help="run the tariff comparison grid")
    compare.add_argument("--schemes", type=schemes_arg, default=None, help="comma-separated tariffs; all by default")
    compare.add_argument(
        "--export-limit", type=export_limit_arg, default=100.0, help="cap of the limited case (kWh/h)"
    )
    compare.add_argument("--jobs", type=int, default=None, help="cells solved in parallel")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        backend = BackendConfig.from_config(name=args.backend, time_limit=args.time_limit)
        if args.command == "run":
            outcome = run_scenario(args.config, args.scheme, args.export_limit, backend, args.out, args.keep_lp)
            if outcome.diagnostic:
                print(f"{outcome.label}: {outcome.status}: {outcome.diagnostic}", file=sys.stderr)
            else:
                print(f"{outcome.label}: {outcome.status}, report in {outcome.out_dir}")
            return outcome.exit_code

        limits = [None] if args.export_limit is None else [None, args.export_limit]
        comparison = compare_tariffs(
            args.config, args.schemes, limits, backend, args.out, args.jobs, args.keep_lp
        )
        for cell in comparison.failed:
            print(f"{cell.label}: {cell.status}: {cell.diagnostic}", file=sys.stderr)
        print(f"{len(comparison.cells)} cells, {len(comparison.failed)} failed, tables in {comparison.out_dir}")
        return comparison.exit_code
    except (ConfigError, DomainError, TimeSeriesError) as e:
        logger.error(f"Invalid scenario: {str(e)}")
        print(str(e), file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
