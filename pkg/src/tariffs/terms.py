"""
Linear objective terms of the tariff designs.

Terms are attached to the hourly metering variables ``imp_tot[t]`` and
``exp_tot[t]`` of a model under construction. Fixed annual charges do not
depend on decisions and are returned for reporting instead.
"""

from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

import numpy as np

from .costs import dynamic_prices, tou_prices
from .errors import TariffError
from .scarcity import ScarcityFlags
from .schemes import DynamicTariff, EnergyTariff, SubscribedCapacityTariff, TariffScheme, TimeOfUseTariff

if TYPE_CHECKING:
    from src.model.builder import ModelBuilder

TARIFF_PART = "tariff"
IMPORT_TOTAL = "imp_tot"
EXPORT_TOTAL = "exp_tot"


@dataclass(frozen=True)
class TariffTerms:
    """What a tariff design added to the model."""

    n_variables: int
    n_constraints: int
    n_objective_terms: int
    fixed_annual: float


def tariff_linear_terms(
    scheme: TariffScheme,
    builder: "ModelBuilder",
    flags: Optional[ScarcityFlags] = None,
    scale: float = 1.0,
) -> TariffTerms:
    """
    Add the variable part of a tariff to a model.

    Args:
        scheme: Tariff design
        builder: Model exposing ``imp_tot[t]`` and ``exp_tot[t]`` for every hour
        flags: Scarcity flags, required for the dynamic design
        scale: Factor applied to every annual term, 1/epsilon in the full model

    Returns:
        TariffTerms: Counts of added elements and the fixed annual charge

    Raises:
        MissingVariable: If a metering variable is absent
        TariffError: If a dynamic design gets no scarcity flags
    """
    horizon = builder.horizon
    n_vars, n_rows, n_terms = builder.n_variables, builder.n_constraints, builder.n_objective_terms
    imports = [builder.var(IMPORT_TOTAL, None, t) for t in range(horizon)]

    if isinstance(scheme, EnergyTariff):
        _price_imports(builder, imports, np.full(horizon, scheme.energy_price), scale)

    elif isinstance(scheme, TimeOfUseTariff):
        _price_imports(builder, imports, tou_prices(scheme, horizon), scale)

    elif isinstance(scheme, SubscribedCapacityTariff):
        c_sub = builder.add_variable("c_sub", unit="kW")
        builder.add_objective_term(c_sub, scale * scheme.capacity_price, TARIFF_PART)
        for t, imp in enumerate(imports):
            below = builder.add_variable("below", None, t)
            above = builder.add_variable("above", None, t)
            builder.add_constraint("split", [(below, 1.0), (above, 1.0), (imp, -1.0)], "=", 0.0, t=t)
            builder.add_constraint("subcap", [(below, 1.0), (c_sub, -1.0)], "<=", 0.0, t=t)
            builder.add_objective_term(below, scale * scheme.below_price, TARIFF_PART)
            builder.add_objective_term(above, scale * scheme.above_price, TARIFF_PART)

    elif isinstance(scheme, DynamicTariff):
        if flags is None:
            raise TariffError("Dynamic tariff needs scarcity flags")
        _price_imports(builder, imports, dynamic_prices(scheme, flags), scale)
        for t in flags.hours:
            exp = builder.var(EXPORT_TOTAL, None, int(t))
            builder.add_objective_term(exp, -scale * scheme.export_bonus, TARIFF_PART)

    else:
        raise TariffError(f"Unknown tariff scheme {type(scheme).__name__}")

    return TariffTerms(
        n_variables=builder.n_variables - n_vars,
        n_constraints=builder.n_constraints - n_rows,
        n_objective_terms=builder.n_objective_terms - n_terms,
        fixed_annual=scheme.fixed_annual_charge,
    )


def _price_imports(builder: "ModelBuilder", imports, prices: np.ndarray, scale: float) -> None:
    for imp, price in zip(imports, prices):
        builder.add_objective_term(imp, scale * float(price), TARIFF_PART)
