"""Post-solve metrics on hourly flows."""

from typing import Optional

import numpy as np

from src.domain.economics import discount_factor
from src.domain.types import EconomicParams
from src.tariffs.costs import tariff_cost_expost
from src.tariffs.scarcity import ScarcityFlags
from src.tariffs.schemes import TariffScheme


def duration_curve(net_imports: np.ndarray) -> np.ndarray:
    """
    Net imports sorted in non-increasing order.

    The sort is stable, so equal values keep their hour order.
    """
    values = np.asarray(net_imports, dtype=float)
    return values[np.argsort(-values, kind="stable")]


def peak_import(imports) -> float:
    """Largest hourly metered import; accepts a series or a SolutionReport."""
    if hasattr(imports, "imports"):
        imports = imports.imports
    values = np.asarray(imports, dtype=float)
    return float(values.max()) if values.size else 0.0


def dso_revenue(
    imports: np.ndarray,
    exports: np.ndarray,
    scheme: TariffScheme,
    flags: Optional[ScarcityFlags],
    subscribed: Optional[float],
    economic: EconomicParams,
) -> float:
    """
    Lifetime tariff revenue of the grid operator, discounted to the start.

    Annual tariff cost (fixed charges included, dynamic export bonus deducted)
    times the lifetime discount factor. Spot and retailer payments are not
    grid revenue.

    Returns:
        float: EUR
    """
    annual = tariff_cost_expost(scheme, imports, exports, flags, subscribed)
    return discount_factor(economic.discount_rate, economic.lifetime_years) * annual
