"""
Scenario cells and the tariff comparison grid.

A cell is one (tariff, export option) pair. Each cell is built, solved and
reported into its own directory ``<out>/<scheme>_<case>``; a comparison runs
every requested cell and writes the combined tables next to them.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Dict, List, Literal, Mapping, Optional, Sequence, Union

import pandas as pd
from airflow.utils.log.logging_mixin import LoggingMixin

from config.run import RUN_CONFIG
from src.analysis.csv_report_loader import CsvReportLoader
from src.analysis.report import SolutionReport, build_report, export_case
from src.analysis.tables import (
    Cell,
    baseline_of,
    cost_change_table,
    cost_revenue_table,
    investment_delta_table,
    max_import_table,
    split_label,
)
from src.domain.errors import DomainError
from src.domain.validation import ValidatedSpec, validate_neighborhood
from src.model.zen import ModelOptions, build_model
from src.solve.base_backend import BackendConfig
from src.solve.errors import SolveError
from src.solve.lp_writer import export_lp
from src.solve.result import SolveStatus
from src.solve.solver import get_backend, solve
from src.tariffs.schemes import SCHEME_TAGS, TariffScheme
from src.timeseries.errors import TimeSeriesError

from .config import FROM_CONFIG, ScenarioConfig, load_scenario
from .errors import ConfigError

logger = LoggingMixin().log

EXIT_OK = 0
EXIT_CONFIG = 3
EXIT_INFEASIBLE = 4
EXIT_LIMIT = 5
EXIT_BACKEND = 6

ERROR_STATUS = "error"

STATUS_EXIT = {
    SolveStatus.OPTIMAL: EXIT_OK,
    SolveStatus.INFEASIBLE: EXIT_INFEASIBLE,
    SolveStatus.UNBOUNDED: EXIT_LIMIT,
    SolveStatus.LIMIT: EXIT_LIMIT,
}

ExportOption = Union[float, None, Literal["config"]]


@dataclass(frozen=True, eq=False)
class CellOutcome:
    """
    Outcome of one scenario cell.

    Attributes:
        label: ``<scheme>_<case>``
        scheme: Tariff tag
        export_limit: Export cap of the cell, None when unconstrained
        status: Solve status, or ``error`` when the backend failed
        exit_code: Process exit code for this outcome
        out_dir: Cell directory
        report: Report when the cell solved to optimality
        diagnostic: Explanation of a failed cell
    """

    label: str
    scheme: str
    export_limit: Optional[float]
    status: str
    exit_code: int
    out_dir: Path
    report: Optional[SolutionReport] = None
    diagnostic: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.exit_code == EXIT_OK

    @property
    def cell(self) -> Cell:
        return self.report if self.report is not None else self.status


@dataclass(frozen=True, eq=False)
class ComparisonOutcome:
    cells: List[CellOutcome]
    out_dir: Path
    tables: Dict[str, Path] = field(default_factory=dict)

    @property
    def failed(self) -> List[CellOutcome]:
        return [c for c in self.cells if not c.ok]

    @property
    def exit_code(self) -> int:
        return self.failed[0].exit_code if self.failed else EXIT_OK


class ScenarioRunner(LoggingMixin):
    """Builds, solves and reports the cells of one scenario document."""

    def __init__(
        self,
        config: ScenarioConfig,
        backend: BackendConfig,
        out_dir: Union[str, Path],
        keep_lp: bool = False,
        loader: Optional[CsvReportLoader] = None,
    ):
        """
        Initialize the runner.

        Args:
            config: Validated scenario document
            backend: Solver backend configuration
            out_dir: Parent directory of the cell directories
            keep_lp: Keep the LP file of every cell in its directory
            loader: Report writer
        """
        super().__init__()
        self.config = config
        self.backend = backend
        self.out_dir = Path(out_dir)
        self.keep_lp = keep_lp
        self.loader = loader or CsvReportLoader()

    @cached_property
    def validated(self) -> ValidatedSpec:
        """Neighborhood checked against its series, loaded once per runner."""
        return validate_neighborhood(self.config.neighborhood_spec(), self.config.load_series())

    def _backend(self, cell_dir: Optional[Path]) -> BackendConfig:
        if cell_dir is None or not self.keep_lp:
            return self.backend
        return self.backend.model_copy(update={"work_dir": cell_dir, "keep_files": True})

    def _write_diagnostic(self, cell_dir: Path, status: str, diagnostic: Optional[str]) -> None:
        cell_dir.mkdir(parents=True, exist_ok=True)
        (cell_dir / "diagnostic.txt").write_text(f"status: {status}\n{diagnostic or ''}\n", encoding="utf-8")

    def run_cell(self, scheme_tag: Optional[str] = None, export_limit: ExportOption = FROM_CONFIG) -> CellOutcome:
        """
        Run one cell.

        Args:
            scheme_tag: Tariff tag; the document's tariff when omitted
            export_limit: Export cap in kWh/h, None for no cap; the document's option by default

        Returns:
            CellOutcome: Status, exit code and the report of an optimal cell
        """
        scheme = self.config.scheme(scheme_tag)
        options = self.config.model_options(export_limit)
        label = f"{scheme.type}_{export_case(options.export_limit)}"
        cell_dir = self.out_dir / label

        model = build_model(self.validated, None, scheme, options)
        backend = get_backend(self._backend(cell_dir))
        if self.keep_lp and backend.config.name == "scipy":
            cell_dir.mkdir(parents=True, exist_ok=True)
            export_lp(model, cell_dir / "model.lp")

        def outcome(status: str, exit_code: int, **kwargs) -> CellOutcome:
            return CellOutcome(label, scheme.type, options.export_limit, status, exit_code, cell_dir, **kwargs)

        try:
            result = solve(model, backend)
        except SolveError as e:
            self.log.error(f"Cell {label} failed: {str(e)}")
            self._write_diagnostic(cell_dir, ERROR_STATUS, str(e))
            return outcome(ERROR_STATUS, EXIT_BACKEND, diagnostic=str(e))

        if not result.is_optimal:
            diagnostic = (
                self.diagnose(scheme, options) if result.status == SolveStatus.INFEASIBLE else result.message
            )
            self.log.warning(f"Cell {label} is {result.status.value}: {diagnostic}")
            self._write_diagnostic(cell_dir, result.status.value, diagnostic)
            return outcome(result.status.value, STATUS_EXIT[result.status], diagnostic=diagnostic)

        report = build_report(model, result, scheme, self.validated.spec.economic, label=label)
        self.loader.load(report, cell_dir)
        return outcome(result.status.value, EXIT_OK, report=report)

    def failed_cell(self, scheme_tag: str, export_limit: ExportOption, error: Exception) -> CellOutcome:
        """
        Outcome of a cell that raised before reaching a solve status.

        Document and series errors map to the configuration exit code, anything
        else to the backend one.
        """
        limit = self.config.options.export_limit if export_limit == FROM_CONFIG else export_limit
        label = f"{scheme_tag}_{export_case(limit)}"
        cell_dir = self.out_dir / label
        diagnostic = f"{type(error).__name__}: {str(error)}"
        exit_code = EXIT_CONFIG if isinstance(error, (ConfigError, DomainError, TimeSeriesError)) else EXIT_BACKEND

        self.log.error(f"Cell {label} raised {diagnostic}")
        self._write_diagnostic(cell_dir, ERROR_STATUS, diagnostic)
        return CellOutcome(label, scheme_tag, limit, ERROR_STATUS, exit_code, cell_dir, diagnostic=diagnostic)

    def diagnose(self, scheme: TariffScheme, options: ModelOptions) -> str:
        """Name the row behind an infeasible cell by re-solving without the CO2 balance."""
        if not options.co2_constraint:
            return "Infeasible without the CO2 balance; loads exceed what the technologies can supply"

        relaxed = ModelOptions(export_limit=options.export_limit, co2_constraint=False)
        try:
            result = solve(build_model(self.validated, None, scheme, relaxed), get_backend(self.backend))
        except SolveError as e:
            return f"Diagnosis failed: {str(e)}"

        if result.is_optimal:
            return "Infeasible because of row co2: the annual CO2 balance cannot be met by on-site generation"
        return f"Still {result.status.value} with row co2 relaxed"


def _backend_config(backend: Union[BackendConfig, str, None]) -> BackendConfig:
    if isinstance(backend, BackendConfig):
        return backend
    return BackendConfig.from_config(name=backend)


def run_scenario(
    config_path: Union[str, Path],
    scheme: Optional[str] = None,
    export_limit: ExportOption = FROM_CONFIG,
    backend: Union[BackendConfig, str, None] = None,
    out_dir: Union[str, Path, None] = None,
    keep_lp: bool = False,
) -> CellOutcome:
    """
    Build, solve and report one cell of a scenario document.

    Raises:
        ConfigError: If the document cannot be read or fails its schema
        SpecValidationError: If the neighborhood is inconsistent with its series
        TimeSeriesError: If the series file cannot be loaded
    """
    config = load_scenario(config_path)
    runner = ScenarioRunner(config, _backend_config(backend), out_dir or RUN_CONFIG["out_dir"], keep_lp)
    return runner.run_cell(scheme, export_limit)


def _run_cell_job(
    config_path: str, scheme: str, export_limit: Optional[float], backend: BackendConfig, out_dir: str, keep_lp: bool
) -> CellOutcome:
    runner = ScenarioRunner(load_scenario(config_path), backend, out_dir, keep_lp)
    return runner.run_cell(scheme, export_limit)


def comparison_tables(cells: Mapping[str, Cell]) -> Dict[str, pd.DataFrame]:
    """
    Combined tables of a comparison.

    Investment deltas and cost changes are taken against the energy tariff
    cell of the same export case; a case whose energy cell failed has neither.
    """
    tables = {"max_import": max_import_table(cells), "cost_revenue": cost_revenue_table(cells)}

    cases: List[str] = []
    for label in cells:
        case = split_label(label)[1]
        cases += [case] if case not in cases else []

    deltas: Dict[str, pd.DataFrame] = {}
    changes: List[pd.DataFrame] = []
    for case in cases:
        in_case = {label: cell for label, cell in cells.items() if split_label(label)[1] == case}
        baseline = baseline_of(in_case, "energy")
        if baseline is None:
            logger.warning(f"No solved energy cell for {case}; skipping its investment deltas")
            continue
        suffix = f"_{case}"
        deltas[case] = investment_delta_table(in_case, baseline).rename(columns=lambda c: c.replace(suffix, ""))
        changes.append(cost_change_table(in_case, baseline))

    if deltas:
        tables["investment_delta"] = pd.concat(deltas, names=["case"])
    if changes:
        tables["cost_change"] = pd.concat(changes)
    return tables


def compare_tariffs(
    config_path: Union[str, Path],
    schemes: Optional[Sequence[str]] = None,
    export_limits: Optional[Sequence[Optional[float]]] = None,
    backend: Union[BackendConfig, str, None] = None,
    out_dir: Union[str, Path, None] = None,
    jobs: Optional[int] = None,
    keep_lp: bool = False,
) -> ComparisonOutcome:
    """
    Run the tariff comparison grid of a scenario document.

    Args:
        config_path: Scenario document
        schemes: Tariff tags to run; all four by default
        export_limits: Export options; no cap and 100 kWh/h by default
        backend: Backend configuration or name
        out_dir: Output directory
        jobs: Cells solved in parallel
        keep_lp: Keep every cell's LP file

    Returns:
        ComparisonOutcome: Cell outcomes and the written tables

    Raises:
        ConfigError: If the document cannot be read or fails its schema
        SpecValidationError: If the neighborhood is inconsistent with its series
    """
    config = load_scenario(config_path)
    schemes = list(schemes or SCHEME_TAGS)
    export_limits = list(export_limits if export_limits is not None else RUN_CONFIG["export_limits"])
    backend_config = _backend_config(backend)
    out_dir = Path(out_dir or RUN_CONFIG["out_dir"])
    jobs = jobs or RUN_CONFIG["jobs"]
    grid = [(scheme, limit) for scheme in schemes for limit in export_limits]

    runner = ScenarioRunner(config, backend_config, out_dir, keep_lp)
    runner.log.info(f"Running {len(grid)} cells with {jobs} job(s) into {out_dir}")
    # checks the neighborhood once before any cell starts
    runner.validated

    outcomes: List[CellOutcome] = []
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(_run_cell_job, str(config_path), s, limit, backend_config, str(out_dir), keep_lp)
                for s, limit in grid
            ]
            for (s, limit), future in zip(grid, futures):
                try:
                    outcomes.append(future.result())
                except Exception as e:
                    outcomes.append(runner.failed_cell(s, limit, e))
    else:
        for s, limit in grid:
            try:
                outcomes.append(runner.run_cell(s, limit))
            except Exception as e:
                outcomes.append(runner.failed_cell(s, limit, e))

    tables = {
        name: runner.loader.load_table(name, table, out_dir)
        for name, table in comparison_tables({o.label: o.cell for o in outcomes}).items()
    }
    result = ComparisonOutcome(outcomes, out_dir, tables)

    runner.log.info(
        f"Comparison finished:\n"
        f"- Cells: {len(outcomes)}\n"
        f"- Failed: {', '.join(f'{c.label} ({c.status})' for c in result.failed) or 'none'}\n"
        f"- Tables: {', '.join(sorted(tables))}"
    )
    return result


def load_cells(out_dir: Union[str, Path], labels: Sequence[str]) -> Dict[str, Cell]:
    """
    Cells of a finished grid read back from their directories.

    A cell without a report is represented by the status in its diagnostic
    file, or ``error`` when that is missing too.
    """
    out_dir = Path(out_dir)
    cells: Dict[str, Cell] = {}
    for label in labels:
        cell_dir = out_dir / label
        if (cell_dir / "summary.csv").exists():
            cells[label] = SolutionReport.from_directory(cell_dir)
            continue
        diagnostic = cell_dir / "diagnostic.txt"
        status = ERROR_STATUS
        if diagnostic.exists():
            status = diagnostic.read_text(encoding="utf-8").splitlines()[0].removeprefix("status: ")
        cells[label] = status
    return cells
