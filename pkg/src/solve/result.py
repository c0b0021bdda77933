from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional


class SolveStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    LIMIT = "limit"


@dataclass(frozen=True)
class SolveResult:
    """
    Outcome of one solve.

    Attributes:
        status: Termination status
        objective_value: Solver objective (EUR), without reported constants; None unless optimal
        variable_values: Value of every variable when optimal, empty otherwise
        duals: Row duals when the backend provides them
        solve_time: Wall-clock seconds
        backend: Backend name
        message: Backend message
    """

    status: SolveStatus
    objective_value: Optional[float] = None
    variable_values: Dict[str, float] = field(default_factory=dict)
    duals: Optional[Dict[str, float]] = None
    solve_time: float = 0.0
    backend: str = ""
    message: str = ""

    @property
    def is_optimal(self) -> bool:
        return self.status == SolveStatus.OPTIMAL
