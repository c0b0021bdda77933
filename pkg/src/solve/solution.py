"""
Backend-native solution files.

Two dialects are understood:

``highs``  the raw solution file of the HiGHS command-line driver::

    Model status
    Optimal

    # Primal solution values
    Feasible
    Objective 1.5
    # Columns 2
    x 1
    y 0.5
    # Rows 1
    c1 1.5

    # Dual solution values
    Feasible
    # Columns 2
    ...
    # Rows 1
    c1 1

``cbc``  the ``solu`` file of CBC: a status line followed by
``index name value reduced_cost`` for every non-zero column; omitted
columns are zero.
"""

import math
import re
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from airflow.utils.log.logging_mixin import LoggingMixin

from src.model.instance import ModelInstance

from .errors import ParseError, SolutionOverflow, SolveError, UnknownVariable
from .lp_writer import lp_name, model_name
from .result import SolveResult, SolveStatus

HIGHS = "highs"
CBC = "cbc"
DIALECTS = (HIGHS, CBC)

HIGHS_STATUS = {
    "optimal": SolveStatus.OPTIMAL,
    "infeasible": SolveStatus.INFEASIBLE,
    "primal infeasible or unbounded": SolveStatus.INFEASIBLE,
    "unbounded": SolveStatus.UNBOUNDED,
    "time limit reached": SolveStatus.LIMIT,
    "iteration limit reached": SolveStatus.LIMIT,
    "solution limit reached": SolveStatus.LIMIT,
    "objective bound": SolveStatus.LIMIT,
    "objective target": SolveStatus.LIMIT,
    "interrupted by user": SolveStatus.LIMIT,
}

CBC_STATUS = (
    ("optimal", SolveStatus.OPTIMAL),
    ("integer infeasible", SolveStatus.INFEASIBLE),
    ("infeasible", SolveStatus.INFEASIBLE),
    ("unbounded", SolveStatus.UNBOUNDED),
    ("stopped", SolveStatus.LIMIT),
)

CBC_OBJECTIVE = re.compile(r"objective value\s+(?P<value>\S+)", re.IGNORECASE)

logger = LoggingMixin().log


class _Lines:
    """Line cursor reporting 1-based positions."""

    def __init__(self, path: Path, lines: List[str]):
        self.path = path
        self.lines = lines
        self.pos = 0

    def at_end(self) -> bool:
        while self.pos < len(self.lines) and not self.lines[self.pos].strip():
            self.pos += 1
        return self.pos >= len(self.lines)

    def next(self, what: str) -> str:
        if self.at_end():
            raise ParseError(self.path, len(self.lines) + 1, 1, f"unexpected end of file, expected {what}")
        line = self.lines[self.pos]
        self.pos += 1
        return line

    def peek(self) -> Optional[str]:
        return None if self.at_end() else self.lines[self.pos]

    def error(self, column: int, detail: str) -> ParseError:
        return ParseError(self.path, self.pos, column, detail)


def _real(text: str, cursor: _Lines, column: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise cursor.error(column, f"not a number: {text!r}") from None
    if math.isinf(value) and "inf" not in text.lower():
        raise SolutionOverflow(cursor.path, cursor.pos, column, f"value {text} overflows a double")
    if math.isnan(value):
        raise cursor.error(column, f"not a number: {text!r}")
    return value


def _check_name(name: str, cursor: _Lines, model: Optional[ModelInstance], rows: bool = False) -> str:
    internal = model_name(name)
    if model is not None:
        known = model.row_index if rows else model.column_index
        if internal not in known:
            what = "row" if rows else "variable"
            raise UnknownVariable(cursor.path, cursor.pos, 1, f"unknown {what} {name!r}")
    return internal


def _count(header: str, cursor: _Lines, prefix: str) -> int:
    if not header.startswith(prefix):
        raise cursor.error(1, f"expected {prefix!r}, got {header.strip()!r}")
    try:
        return int(header[len(prefix):].strip())
    except ValueError:
        raise cursor.error(len(prefix) + 1, f"bad count in {header.strip()!r}") from None


def _name_values(cursor: _Lines, n: int, model: Optional[ModelInstance], rows: bool) -> Dict[str, float]:
    values: Dict[str, float] = {}
    for _ in range(n):
        line = cursor.next("a name and a value")
        parts = line.split()
        if len(parts) != 2:
            raise cursor.error(1, f"expected 'name value', got {line.strip()!r}")
        value = _real(parts[1], cursor, line.index(parts[1], len(parts[0])) + 1)
        values[_check_name(parts[0], cursor, model, rows)] = value
    return values


def _parse_highs(cursor: _Lines, model: Optional[ModelInstance]) -> SolveResult:
    header = cursor.next("'Model status'")
    if header.strip().lower() != "model status":
        raise cursor.error(1, f"expected 'Model status', got {header.strip()!r}")
    status_text = cursor.next("a model status").strip()
    status = HIGHS_STATUS.get(status_text.lower())
    if status is None:
        raise cursor.error(1, f"unknown model status {status_text!r}")

    if status != SolveStatus.OPTIMAL:
        return SolveResult(status, backend=HIGHS, message=status_text)

    if cursor.next("'# Primal solution values'").strip() != "# Primal solution values":
        raise cursor.error(1, "expected '# Primal solution values'")
    feasibility = cursor.next("a feasibility flag").strip()
    if feasibility.lower() == "none":
        raise cursor.error(1, "optimal status without primal values")
    objective_line = cursor.next("'Objective <value>'")
    if not objective_line.startswith("Objective"):
        raise cursor.error(1, f"expected 'Objective', got {objective_line.strip()!r}")
    objective = _real(objective_line[len("Objective"):].strip(), cursor, len("Objective") + 2)

    columns = _name_values(cursor, _count(cursor.next("'# Columns'"), cursor, "# Columns"), model, rows=False)
    if model is not None and len(columns) != model.n_variables:
        raise cursor.error(1, f"{len(columns)} columns, model has {model.n_variables}")
    _name_values(cursor, _count(cursor.next("'# Rows'"), cursor, "# Rows"), model, rows=True)

    duals: Optional[Dict[str, float]] = None
    if cursor.peek() is not None and cursor.peek().strip() == "# Dual solution values":
        cursor.next("dual header")
        if cursor.next("a feasibility flag").strip().lower() != "none":
            _name_values(cursor, _count(cursor.next("'# Columns'"), cursor, "# Columns"), model, rows=False)
            duals = _name_values(cursor, _count(cursor.next("'# Rows'"), cursor, "# Rows"), model, rows=True)

    return SolveResult(status, objective, columns, duals, backend=HIGHS, message=status_text)


def _parse_cbc(cursor: _Lines, model: Optional[ModelInstance]) -> SolveResult:
    header = cursor.next("a status line").strip()
    lowered = header.lower()
    status = next((s for prefix, s in CBC_STATUS if lowered.startswith(prefix)), None)
    if status is None:
        raise cursor.error(1, f"unknown status line {header!r}")
    if status != SolveStatus.OPTIMAL:
        return SolveResult(status, backend=CBC, message=header)

    match = CBC_OBJECTIVE.search(header)
    if match is None:
        raise cursor.error(1, "status line without objective value")
    objective = _real(match.group("value"), cursor, match.start("value") + 1)

    values: Dict[str, float] = {name: 0.0 for name in model.var_names} if model is not None else {}
    while not cursor.at_end():
        line = cursor.next("a column line")
        parts = line.replace("**", " ").split()
        if len(parts) != 4:
            raise cursor.error(1, f"expected 'index name value reduced_cost', got {line.strip()!r}")
        if not parts[0].isdigit():
            raise cursor.error(line.index(parts[0]) + 1, f"bad column index {parts[0]!r}")
        value = _real(parts[2], cursor, line.index(parts[2], line.index(parts[1]) + len(parts[1])) + 1)
        _real(parts[3], cursor, line.rindex(parts[3]) + 1)
        values[_check_name(parts[1], cursor, model)] = value

    return SolveResult(status, objective, values, backend=CBC, message=header)


def parse_solution_file(
    path: Union[str, Path], dialect: str, model: Optional[ModelInstance] = None
) -> SolveResult:
    """
    Parse a backend solution file.

    Args:
        path: Solution file
        dialect: "highs" or "cbc"
        model: Model the names are checked against; unchecked when omitted

    Returns:
        SolveResult: Status, objective and values (without solve time)

    Raises:
        ParseError: With line and column of the first problem
        SolutionOverflow: If a value does not fit a double
        UnknownVariable: If a name is not in the model
    """
    if dialect not in DIALECTS:
        raise SolveError(f"Unknown solution dialect {dialect!r}, expected one of {DIALECTS}")
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as f:
            lines = f.read().splitlines()
    except OSError as e:
        error_msg = f"Cannot read solution file {path}: {str(e)}"
        logger.error(error_msg)
        raise SolveError(error_msg) from e

    cursor = _Lines(path, lines)
    result = _parse_highs(cursor, model) if dialect == HIGHS else _parse_cbc(cursor, model)
    logger.info(f"Solution parsed from {path}: {result.status.value}, {len(result.variable_values)} values")
    return result


def _value(value: float) -> str:
    return format(float(value), ".17g")


def write_solution_file(
    result: SolveResult, path: Union[str, Path], dialect: str, model: Optional[ModelInstance] = None
) -> Path:
    """
    Write a result in a backend dialect.

    Args:
        result: Result to write
        path: Target file
        dialect: "highs" or "cbc"
        model: Supplies row activities and column order for the highs dialect

    Returns:
        Path: The written file
    """
    if dialect not in DIALECTS:
        raise SolveError(f"Unknown solution dialect {dialect!r}, expected one of {DIALECTS}")
    path = Path(path)
    lines = _highs_lines(result, model) if dialect == HIGHS else _cbc_lines(result, model)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("\n".join(lines) + "\n")
    return path


HIGHS_STATUS_TEXT = {
    SolveStatus.OPTIMAL: "Optimal",
    SolveStatus.INFEASIBLE: "Infeasible",
    SolveStatus.UNBOUNDED: "Unbounded",
    SolveStatus.LIMIT: "Time limit reached",
}


def _ordered_values(result: SolveResult, model: Optional[ModelInstance]) -> List[Tuple[str, float]]:
    if model is None:
        return list(result.variable_values.items())
    return [(name, result.variable_values.get(name, 0.0)) for name in model.var_names]


def _highs_lines(result: SolveResult, model: Optional[ModelInstance]) -> List[str]:
    lines = ["Model status", HIGHS_STATUS_TEXT[result.status]]
    if not result.is_optimal:
        return lines
    columns = _ordered_values(result, model)
    rows: List[Tuple[str, float]] = []
    if model is not None:
        activity = model.activities(model.vector(result.variable_values))
        rows = list(zip(model.row_names, activity.tolist()))

    lines += ["", "# Primal solution values", "Feasible", f"Objective {_value(result.objective_value)}"]
    lines.append(f"# Columns {len(columns)}")
    lines += [f"{lp_name(name)} {_value(v)}" for name, v in columns]
    lines.append(f"# Rows {len(rows)}")
    lines += [f"{lp_name(name)} {_value(v)}" for name, v in rows]

    if result.duals is not None and model is not None:
        lines += ["", "# Dual solution values", "Feasible", f"# Columns {len(columns)}"]
        lines += [f"{lp_name(name)} 0" for name, _ in columns]
        lines.append(f"# Rows {len(rows)}")
        lines += [f"{lp_name(name)} {_value(result.duals.get(name, 0.0))}" for name, _ in rows]
    return lines


def _cbc_lines(result: SolveResult, model: Optional[ModelInstance]) -> List[str]:
    if not result.is_optimal:
        text = {
            SolveStatus.INFEASIBLE: "Infeasible",
            SolveStatus.UNBOUNDED: "Unbounded",
            SolveStatus.LIMIT: "Stopped on time",
        }[result.status]
        return [f"{text} - objective value 0.00000000"]
    lines = [f"Optimal - objective value {_value(result.objective_value)}"]
    for index, (name, value) in enumerate(_ordered_values(result, model)):
        if value != 0:
            lines.append(f"{index:7d} {lp_name(name):<30} {_value(value):>24} {0:>24}")
    return lines
