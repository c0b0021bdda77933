"""
Incremental construction of sparse linear models.

A ModelBuilder accepts variables, constraints and objective terms in any
order and produces a ModelInstance whose variables and rows are sorted by
(symbol, asset, hour), so building the same scenario twice gives identical
files.
"""

from collections import defaultdict
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
from airflow.utils.log.logging_mixin import LoggingMixin
from scipy import sparse

from .errors import DuplicateName, MissingVariable, UnknownSense
from .instance import MAXIMIZE, MINIMIZE, SENSES, ModelInstance

Key = Tuple[str, Optional[str], Optional[int]]
Term = Tuple[int, float]

OBJECTIVE = "objective"


def element_name(sym: str, asset: Optional[str] = None, t: Optional[int] = None) -> str:
    """Name of one model element, e.g. ``soc[battery@apartments][17]``."""
    name = sym
    if asset is not None:
        name += f"[{asset}]"
    if t is not None:
        name += f"[{t}]"
    return name


def _sort_key(key: Key) -> Tuple[str, str, int]:
    sym, asset, t = key
    return sym, asset or "", -1 if t is None else t


class ModelBuilder(LoggingMixin):
    """
    Single-writer model under construction.

    Attributes:
        horizon: Number of hours the model spans
        sense: "min" or "max"
    """

    def __init__(self, horizon: int = 0, sense: str = MINIMIZE):
        super().__init__()
        if sense not in (MINIMIZE, MAXIMIZE):
            raise ValueError(f"Unknown objective sense {sense!r}")
        self.horizon = horizon
        self.sense = sense

        self._var_keys: List[Key] = []
        self._var_index: Dict[Key, int] = {}
        self._lb: List[float] = []
        self._ub: List[float] = []
        self._binary: List[bool] = []
        self._var_units: List[str] = []

        self._row_keys: List[Key] = []
        self._row_index: Dict[Key, int] = {}
        self._senses: List[str] = []
        self._rhs: List[float] = []
        self._row_units: List[str] = []
        self._rows: List[int] = []
        self._cols: List[int] = []
        self._vals: List[float] = []

        self._objective: Dict[str, Dict[int, float]] = defaultdict(lambda: defaultdict(float))
        self._n_objective_terms = 0
        self._constants: Dict[str, float] = {}
        self.metadata: Dict[str, object] = {}

    @property
    def n_variables(self) -> int:
        return len(self._var_keys)

    @property
    def n_constraints(self) -> int:
        return len(self._row_keys)

    @property
    def n_objective_terms(self) -> int:
        return self._n_objective_terms

    def add_variable(
        self,
        sym: str,
        asset: Optional[str] = None,
        t: Optional[int] = None,
        lb: float = 0.0,
        ub: float = np.inf,
        binary: bool = False,
        unit: str = "kWh",
    ) -> int:
        """
        Register a variable.

        Args:
            sym: Symbol, e.g. "imp"
            asset: Asset id, if the variable belongs to one
            t: Hour, if the variable is hourly
            lb: Lower bound
            ub: Upper bound (None or inf for unbounded)
            binary: Whether the variable is binary (bounds forced to [0, 1])
            unit: Unit tag

        Returns:
            int: Handle used in constraint and objective terms

        Raises:
            DuplicateName: If the same (sym, asset, t) is registered twice
        """
        key = (sym, asset, t)
        if key in self._var_index:
            raise DuplicateName(element_name(*key))
        handle = len(self._var_keys)
        self._var_index[key] = handle
        self._var_keys.append(key)
        self._lb.append(0.0 if binary else lb)
        self._ub.append(1.0 if binary else (np.inf if ub is None else ub))
        self._binary.append(binary)
        self._var_units.append(unit)
        return handle

    def var(self, sym: str, asset: Optional[str] = None, t: Optional[int] = None) -> int:
        try:
            return self._var_index[(sym, asset, t)]
        except KeyError:
            raise MissingVariable(element_name(sym, asset, t)) from None

    def has_var(self, sym: str, asset: Optional[str] = None, t: Optional[int] = None) -> bool:
        return (sym, asset, t) in self._var_index

    def add_constraint(
        self,
        sym: str,
        terms: Iterable[Term],
        sense: str,
        rhs: float = 0.0,
        asset: Optional[str] = None,
        t: Optional[int] = None,
        unit: str = "kWh",
    ) -> int:
        """
        Register a constraint ``sum(coef * var) <sense> rhs``.

        Repeated handles are merged and zero coefficients dropped.

        Returns:
            int: Row handle
        """
        if sense not in SENSES:
            raise UnknownSense(sense)
        key = (sym, asset, t)
        if key in self._row_index:
            raise DuplicateName(element_name(*key))

        merged: Dict[int, float] = defaultdict(float)
        for handle, coef in terms:
            if not 0 <= handle < len(self._var_keys):
                raise MissingVariable(f"handle {handle}")
            merged[handle] += coef

        row = len(self._row_keys)
        self._row_index[key] = row
        self._row_keys.append(key)
        self._senses.append(sense)
        self._rhs.append(float(rhs))
        self._row_units.append(unit)
        for handle, coef in merged.items():
            if coef != 0.0:
                self._rows.append(row)
                self._cols.append(handle)
                self._vals.append(coef)
        return row

    def add_objective_term(self, handle: int, coef: float, part: str = OBJECTIVE) -> None:
        if not 0 <= handle < len(self._var_keys):
            raise MissingVariable(f"handle {handle}")
        self._objective[part][handle] += coef
        self._n_objective_terms += 1

    def add_constant(self, name: str, value: float) -> None:
        """Decision-independent objective contribution, reported apart from the solve."""
        self._constants[name] = self._constants.get(name, 0.0) + float(value)

    def build(self) -> ModelInstance:
        """
        Freeze the model.

        Returns:
            ModelInstance: Variables and rows sorted by (symbol, asset, hour)
        """
        var_order = sorted(range(len(self._var_keys)), key=lambda i: _sort_key(self._var_keys[i]))
        row_order = sorted(range(len(self._row_keys)), key=lambda i: _sort_key(self._row_keys[i]))
        new_col = np.empty(len(var_order), dtype=np.int64)
        new_col[var_order] = np.arange(len(var_order))
        new_row = np.empty(len(row_order), dtype=np.int64)
        new_row[row_order] = np.arange(len(row_order))

        rows = new_row[np.asarray(self._rows, dtype=np.int64)]
        cols = new_col[np.asarray(self._cols, dtype=np.int64)]
        matrix = sparse.csr_matrix(
            (np.asarray(self._vals, dtype=float), (rows, cols)),
            shape=(len(row_order), len(var_order)),
        )
        matrix.sort_indices()

        var_names = tuple(element_name(*self._var_keys[i]) for i in var_order)
        parts: Dict[str, np.ndarray] = {}
        for part in sorted(self._objective):
            vector = np.zeros(len(var_order))
            for handle, coef in self._objective[part].items():
                vector[new_col[handle]] += coef
            parts[part] = vector
        objective = np.sum(list(parts.values()), axis=0) if parts else np.zeros(len(var_order))

        symbols: Dict[str, List[str]] = defaultdict(list)
        for name, i in zip(var_names, var_order):
            symbols[self._var_keys[i][0]].append(name)

        instance = ModelInstance(
            var_names=var_names,
            var_lb=np.asarray([self._lb[i] for i in var_order], dtype=float),
            var_ub=np.asarray([self._ub[i] for i in var_order], dtype=float),
            var_binary=np.asarray([self._binary[i] for i in var_order], dtype=bool),
            var_units=tuple(self._var_units[i] for i in var_order),
            row_names=tuple(element_name(*self._row_keys[i]) for i in row_order),
            matrix=matrix,
            row_senses=tuple(self._senses[i] for i in row_order),
            rhs=np.asarray([self._rhs[i] for i in row_order], dtype=float),
            row_units=tuple(self._row_units[i] for i in row_order),
            objective=objective,
            sense=self.sense,
            objective_parts=parts,
            constants=dict(sorted(self._constants.items())),
            symbols={sym: tuple(names) for sym, names in sorted(symbols.items())},
            metadata=dict(self.metadata),
        )
        self.log.info(
            f"Model built:\n"
            f"- Variables: {instance.n_variables}\n"
            f"- Constraints: {instance.n_constraints}\n"
            f"- Non-zeros: {matrix.nnz}"
        )
        return instance
