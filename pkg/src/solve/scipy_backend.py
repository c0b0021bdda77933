"""
In-process backend on the HiGHS solvers shipped with SciPy.

Pure LPs go through ``linprog`` so row duals are available; models with
binaries go through ``milp``.
"""

from typing import Dict, Optional, Tuple

import numpy as np
from scipy import sparse
from scipy.optimize import Bounds, LinearConstraint, linprog, milp

from src.model.instance import EQ, GE, LE, MAXIMIZE, ModelInstance

from .base_backend import BaseBackend
from .result import SolveResult, SolveStatus

STATUS = {
    0: SolveStatus.OPTIMAL,
    1: SolveStatus.LIMIT,
    2: SolveStatus.INFEASIBLE,
    3: SolveStatus.UNBOUNDED,
}


class ScipyBackend(BaseBackend):
    def _solve(self, model: ModelInstance) -> SolveResult:
        if model.has_binaries:
            return self._solve_milp(model)
        result = self._solve_lp(model, presolve=True)
        # presolve cannot always tell infeasible from unbounded
        if result.status == SolveStatus.INFEASIBLE and "unbounded" in result.message.lower():
            self.log.info("Ambiguous infeasible-or-unbounded status, solving again without presolve")
            result = self._solve_lp(model, presolve=False)
        return result

    def _options(self, presolve: bool = True) -> Dict[str, object]:
        options: Dict[str, object] = {"presolve": presolve}
        if self.config.time_limit is not None:
            options["time_limit"] = self.config.time_limit
        return options

    def _objective(self, model: ModelInstance) -> Tuple[np.ndarray, float]:
        sign = -1.0 if model.sense == MAXIMIZE else 1.0
        return sign * model.objective, sign

    def _solve_lp(self, model: ModelInstance, presolve: bool) -> SolveResult:
        c, sign = self._objective(model)
        senses = np.asarray(model.row_senses)
        le = np.flatnonzero(senses == LE)
        ge = np.flatnonzero(senses == GE)
        eq = np.flatnonzero(senses == EQ)

        a_ub: Optional[sparse.csr_matrix] = None
        b_ub: Optional[np.ndarray] = None
        if le.size or ge.size:
            a_ub = sparse.vstack([model.matrix[le], -model.matrix[ge]], format="csr")
            b_ub = np.concatenate([model.rhs[le], -model.rhs[ge]])
        a_eq = model.matrix[eq] if eq.size else None
        b_eq = model.rhs[eq] if eq.size else None

        bounds = [
            (None if np.isneginf(lb) else lb, None if np.isposinf(ub) else ub)
            for lb, ub in zip(model.var_lb, model.var_ub)
        ]
        res = linprog(
            c, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=b_eq, bounds=bounds,
            method="highs", options=self._options(presolve),
        )

        status = STATUS.get(res.status)
        if status is None:
            return SolveResult(SolveStatus.LIMIT, message=res.message)
        if status != SolveStatus.OPTIMAL:
            return SolveResult(status, message=res.message)

        duals: Dict[str, float] = {}
        if a_ub is not None:
            marginals = sign * np.asarray(res.ineqlin.marginals)
            for k, row in enumerate(le):
                duals[model.row_names[row]] = float(marginals[k])
            for k, row in enumerate(ge):
                duals[model.row_names[row]] = -float(marginals[le.size + k])
        if a_eq is not None:
            marginals = sign * np.asarray(res.eqlin.marginals)
            for k, row in enumerate(eq):
                duals[model.row_names[row]] = float(marginals[k])

        return SolveResult(
            SolveStatus.OPTIMAL,
            objective_value=sign * float(res.fun),
            variable_values=dict(zip(model.var_names, np.asarray(res.x, dtype=float).tolist())),
            duals=duals,
            message=res.message,
        )

    def _solve_milp(self, model: ModelInstance) -> SolveResult:
        c, sign = self._objective(model)
        senses = np.asarray(model.row_senses)
        row_lb = np.where(senses == LE, -np.inf, model.rhs)
        row_ub = np.where(senses == GE, np.inf, model.rhs)

        constraints = [LinearConstraint(model.matrix, row_lb, row_ub)] if model.n_constraints else []
        options = self._options()
        options["mip_rel_gap"] = self.config.mip_rel_gap
        res = milp(
            c,
            integrality=model.var_binary.astype(int),
            bounds=Bounds(model.var_lb, model.var_ub),
            constraints=constraints,
            options=options,
        )

        status = STATUS.get(res.status, SolveStatus.LIMIT)
        if status != SolveStatus.OPTIMAL or res.x is None:
            return SolveResult(status if status != SolveStatus.OPTIMAL else SolveStatus.LIMIT, message=res.message)
        return SolveResult(
            SolveStatus.OPTIMAL,
            objective_value=sign * float(res.fun),
            variable_values=dict(zip(model.var_names, np.asarray(res.x, dtype=float).tolist())),
            message=res.message,
        )
