"""Replaying stored values into a model."""

from dataclasses import dataclass
from typing import Mapping, Union

import numpy as np

from src.model.instance import ModelInstance

from .result import SolveResult


@dataclass(frozen=True)
class ReplayReport:
    """
    Feasibility of a point.

    Attributes:
        max_violation: Largest row violation
        max_bound_violation: Largest bound violation
        objective_value: Objective at the point, without reported constants
        worst_row: Name of the most violated row, empty for a feasible point
    """

    max_violation: float
    max_bound_violation: float
    objective_value: float
    worst_row: str = ""

    def feasible(self, tolerance: float = 1e-6) -> bool:
        return self.max_violation <= tolerance and self.max_bound_violation <= tolerance


def replay(model: ModelInstance, values: Union[SolveResult, Mapping[str, float]]) -> ReplayReport:
    """
    Plug values into a model.

    Args:
        model: Model to check
        values: Solve result or name -> value map; absent variables count as 0

    Returns:
        ReplayReport: Violations and objective value
    """
    if isinstance(values, SolveResult):
        values = values.variable_values
    x = model.vector(values)
    violations = model.violations(x)
    bounds = model.bound_violations(x)
    worst = int(np.argmax(violations)) if violations.size else -1
    max_violation = float(violations[worst]) if worst >= 0 else 0.0
    return ReplayReport(
        max_violation=max_violation,
        max_bound_violation=float(bounds.max()) if bounds.size else 0.0,
        objective_value=model.objective_value(x),
        worst_row=model.row_names[worst] if max_violation > 0 else "",
    )
