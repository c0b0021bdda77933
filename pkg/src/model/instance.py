"""
Immutable sparse linear model.

Variables and constraints are identified by names of the form
``sym[asset][t]``; coefficient rows are held in a CSR matrix whose column
order is the variable order.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, Mapping, Tuple

import numpy as np
from scipy import sparse

from .errors import MissingVariable

LE = "<="
EQ = "="
GE = ">="
SENSES = (LE, EQ, GE)

MINIMIZE = "min"
MAXIMIZE = "max"


@dataclass(frozen=True, eq=False)
class ModelInstance:
    """
    A built linear (or mixed-integer) model.

    Attributes:
        var_names: Variable names in column order
        var_lb: Lower bounds, -inf for free variables
        var_ub: Upper bounds, +inf when unbounded
        var_binary: True for binary variables
        var_units: Unit tag per variable
        row_names: Constraint names in row order
        matrix: Coefficient matrix, rows x variables
        row_senses: One of <=, =, >= per row
        rhs: Right-hand sides
        row_units: Unit tag per row
        objective: Combined objective coefficients
        sense: "min" or "max"
        objective_parts: Objective coefficients split by cost component
        constants: Decision-independent objective contributions, reported apart
        symbols: Symbol -> names of the variables carrying it
        metadata: Free-form scenario information (horizon, scheme, options)
    """

    var_names: Tuple[str, ...]
    var_lb: np.ndarray
    var_ub: np.ndarray
    var_binary: np.ndarray
    var_units: Tuple[str, ...]
    row_names: Tuple[str, ...]
    matrix: sparse.csr_matrix
    row_senses: Tuple[str, ...]
    rhs: np.ndarray
    row_units: Tuple[str, ...]
    objective: np.ndarray
    sense: str = MINIMIZE
    objective_parts: Mapping[str, np.ndarray] = field(default_factory=dict)
    constants: Mapping[str, float] = field(default_factory=dict)
    symbols: Mapping[str, Tuple[str, ...]] = field(default_factory=dict)
    metadata: Mapping[str, Any] = field(default_factory=dict)

    @property
    def n_variables(self) -> int:
        return len(self.var_names)

    @property
    def n_constraints(self) -> int:
        return len(self.row_names)

    @property
    def has_binaries(self) -> bool:
        return bool(np.any(self.var_binary))

    @property
    def objective_constant(self) -> float:
        return float(sum(self.constants.values()))

    @cached_property
    def column_index(self) -> Dict[str, int]:
        return {name: i for i, name in enumerate(self.var_names)}

    @cached_property
    def row_index(self) -> Dict[str, int]:
        return {name: i for i, name in enumerate(self.row_names)}

    def column(self, name: str) -> int:
        try:
            return self.column_index[name]
        except KeyError:
            raise MissingVariable(name) from None

    def vector(self, values: Mapping[str, float]) -> np.ndarray:
        """Dense value vector in column order; absent names count as zero."""
        x = np.zeros(self.n_variables)
        for name, value in values.items():
            x[self.column(name)] = value
        return x

    def objective_value(self, x: np.ndarray) -> float:
        return float(self.objective @ x)

    def activities(self, x: np.ndarray) -> np.ndarray:
        return self.matrix @ x

    def violations(self, x: np.ndarray) -> np.ndarray:
        """
        Per-row violation of a point, 0 where the row holds.

        Args:
            x: Values in column order

        Returns:
            np.ndarray: Non-negative violation per row
        """
        activity = self.activities(x)
        senses = np.asarray(self.row_senses)
        gap = activity - self.rhs
        out = np.zeros(self.n_constraints)
        out[senses == LE] = np.maximum(gap[senses == LE], 0.0)
        out[senses == GE] = np.maximum(-gap[senses == GE], 0.0)
        out[senses == EQ] = np.abs(gap[senses == EQ])
        return out

    def bound_violations(self, x: np.ndarray) -> np.ndarray:
        return np.maximum(np.maximum(self.var_lb - x, x - self.var_ub), 0.0)

    def values_of(self, symbol: str, x: np.ndarray) -> Dict[str, float]:
        """Values of every variable carrying ``symbol``."""
        return {name: float(x[self.column_index[name]]) for name in self.symbols.get(symbol, ())}
