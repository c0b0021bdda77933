"""
Base solver backend.

This module provides the backend configuration and the base class every
backend derives from, with shared timing, logging and error wrapping.
"""

import time
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Literal, Optional

from airflow.utils.log.logging_mixin import LoggingMixin
from pydantic import BaseModel, ConfigDict, Field

from config.solver import SOLVER_CONFIG
from src.model.instance import ModelInstance

from .errors import EmptyModel, SolveError
from .result import SolveResult

BackendName = Literal["scipy", "highs", "cbc"]


class BackendConfig(BaseModel):
    """
    Backend selection and limits.

    Attributes:
        name: Backend name
        executable: Solver executable for subprocess backends; found on PATH when omitted
        time_limit: Seconds before the solver stops with status ``limit``
        mip_rel_gap: Relative optimality gap for models with binaries
        threads: Solver threads
        work_dir: Directory for LP and solution files; a temporary one when omitted
        keep_files: Keep LP and solution files after the solve
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: BackendName = "scipy"
    executable: Optional[str] = None
    time_limit: Optional[float] = Field(default=None, gt=0)
    mip_rel_gap: float = Field(default=1e-6, ge=0)
    threads: int = Field(default=1, ge=1)
    work_dir: Optional[Path] = None
    keep_files: bool = False

    @classmethod
    def from_config(cls, **overrides) -> "BackendConfig":
        """Defaults from SOLVER_CONFIG, then explicit overrides (None values ignored)."""
        values = {
            "name": SOLVER_CONFIG["backend"],
            "executable": SOLVER_CONFIG["executable"],
            "time_limit": SOLVER_CONFIG["time_limit"],
            "mip_rel_gap": SOLVER_CONFIG["mip_rel_gap"],
            "threads": SOLVER_CONFIG["threads"],
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


class BaseBackend(ABC, LoggingMixin):
    """Base class for solving a ModelInstance."""

    def __init__(self, config: BackendConfig):
        """
        Initialize the backend.

        Args:
            config: Backend configuration
        """
        self.config = config
        super().__init__()

    @abstractmethod
    def _solve(self, model: ModelInstance) -> SolveResult:
        """
        Solve a non-empty model.

        Returns:
            SolveResult: Result without solve time
        """
        pass

    def solve(self, model: ModelInstance) -> SolveResult:
        """
        Solve a model.

        Args:
            model: Model to solve

        Returns:
            SolveResult: Status, objective, values and wall-clock time

        Raises:
            EmptyModel: If the model has no variables
            SolveError: If the backend fails
        """
        if model.n_variables == 0:
            raise EmptyModel()

        self.log.info(
            f"Solving with {self.config.name}: {model.n_variables} variables, {model.n_constraints} rows"
        )
        start = time.perf_counter()
        try:
            result = self._solve(model)
        except SolveError:
            raise
        except Exception as e:
            error_msg = f"Backend {self.config.name} failed: {str(e)}"
            self.log.error(error_msg)
            raise SolveError(error_msg) from e
        elapsed = time.perf_counter() - start

        result = SolveResult(
            status=result.status,
            objective_value=result.objective_value,
            variable_values=result.variable_values,
            duals=result.duals,
            solve_time=elapsed,
            backend=self.config.name,
            message=result.message,
        )
        self.log.info(
            f"Solve finished:\n"
            f"- Status: {result.status.value}\n"
            f"- Objective: {result.objective_value}\n"
            f"- Time: {elapsed:.2f} s"
        )
        return result
