"""
CPLEX LP writer.

Model names ``sym[asset][t]`` become ``sym(asset)(t)`` since brackets are
reserved in the format. Reals are printed with 12 significant digits in the
C locale, rows are wrapped so no line grows past LINE_WIDTH characters, and
every variable gets an explicit bound line.
"""

from pathlib import Path
from typing import Iterable, List, Tuple, Union

import numpy as np
from airflow.utils.log.logging_mixin import LoggingMixin

from src.model.instance import MAXIMIZE, ModelInstance

from .errors import EmptyModel, SolveError

LINE_WIDTH = 200

logger = LoggingMixin().log


def lp_name(name: str) -> str:
    return name.replace("[", "(").replace("]", ")")


def model_name(name: str) -> str:
    return name.replace("(", "[").replace(")", "]")


def format_real(value: float) -> str:
    if value == 0:
        return "0"
    return format(float(value), ".12g")


def _expression(terms: Iterable[Tuple[float, str]], indent: str = " ") -> List[str]:
    """Linear expression as wrapped lines, the first without indentation."""
    lines: List[str] = []
    current = ""
    for i, (coef, name) in enumerate(terms):
        if i == 0:
            piece = f"{'-' if coef < 0 else ''}{format_real(abs(coef))} {name}"
        else:
            piece = f"{'-' if coef < 0 else '+'} {format_real(abs(coef))} {name}"
        if current and len(current) + len(piece) + 1 > LINE_WIDTH:
            lines.append(current)
            current = indent + piece
        else:
            current = f"{current} {piece}" if current else piece
    lines.append(current)
    return lines


def _bound_line(name: str, lb: float, ub: float) -> str:
    if np.isneginf(lb) and np.isposinf(ub):
        return f" {name} free"
    if lb == ub:
        return f" {name} = {format_real(lb)}"
    lower = "-inf" if np.isneginf(lb) else format_real(lb)
    if np.isposinf(ub):
        return f" {name} >= {lower}"
    return f" {lower} <= {name} <= {format_real(ub)}"


def lp_lines(model: ModelInstance) -> List[str]:
    """The LP file of a model as a list of lines."""
    if model.n_variables == 0:
        raise EmptyModel()

    names = [lp_name(n) for n in model.var_names]
    lines = ["\\ generated by zen-tariffs", "Maximize" if model.sense == MAXIMIZE else "Minimize"]

    objective = [(float(c), names[j]) for j, c in enumerate(model.objective) if c != 0]
    expression = _expression(objective or [(0.0, names[0])], indent="  ")
    lines.append(f" obj: {expression[0]}")
    lines.extend(expression[1:])

    lines.append("Subject To")
    matrix = model.matrix
    for i, row in enumerate(model.row_names):
        start, end = matrix.indptr[i], matrix.indptr[i + 1]
        terms = [(float(v), names[j]) for j, v in zip(matrix.indices[start:end], matrix.data[start:end])]
        expression = _expression(terms or [(0.0, names[0])], indent="  ")
        expression[-1] += f" {model.row_senses[i]} {format_real(model.rhs[i])}"
        lines.append(f" {lp_name(row)}: {expression[0]}")
        lines.extend(expression[1:])

    lines.append("Bounds")
    for name, lb, ub in zip(names, model.var_lb, model.var_ub):
        lines.append(_bound_line(name, lb, ub))

    if model.has_binaries:
        lines.append("Binaries")
        lines.extend(f" {name}" for name, binary in zip(names, model.var_binary) if binary)

    lines.append("End")
    return lines


def export_lp(model: ModelInstance, path: Union[str, Path]) -> Path:
    """
    Write a model as a CPLEX LP file.

    Args:
        model: Model to write
        path: Target file

    Returns:
        Path: The written file

    Raises:
        EmptyModel: If the model has no variables
        SolveError: If the file cannot be written
    """
    path = Path(path)
    lines = lp_lines(model)
    try:
        with open(path, "w", encoding="ascii", newline="\n") as f:
            f.write("\n".join(lines))
            f.write("\n")
    except OSError as e:
        error_msg = f"Cannot write LP file {path}: {str(e)}"
        logger.error(error_msg)
        raise SolveError(error_msg) from e

    logger.info(f"LP file written: {path} ({model.n_variables} variables, {model.n_constraints} rows)")
    return path
