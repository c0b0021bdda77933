"""
Ex-post tariff evaluation on metered hourly flows.
"""

from typing import Any, Mapping, Optional

import numpy as np
from airflow.utils.log.logging_mixin import LoggingMixin

from src.domain.types import EconomicParams

from .errors import FlowMismatch, MissingSubscription, NegativeSubscription, TariffError
from .scarcity import ScarcityFlags, TouBand, tou_band
from .schemes import (
    TARIFF_ADAPTER,
    DynamicTariff,
    EnergyTariff,
    SubscribedCapacityTariff,
    TariffScheme,
    TimeOfUseTariff,
)

logger = LoggingMixin().log


def tou_prices(scheme: TimeOfUseTariff, horizon: int) -> np.ndarray:
    """Hourly ToU price, hour 0 being midnight."""
    by_band = {TouBand.LOW: scheme.low, TouBand.MED: scheme.med, TouBand.PEAK: scheme.peak}
    day = np.array(
        [by_band[tou_band(h, scheme.peak_hours, scheme.low_hours)] for h in range(24)]
    )
    return day[np.arange(horizon) % 24]


def dynamic_prices(scheme: DynamicTariff, flags: ScarcityFlags) -> np.ndarray:
    return np.where(flags.flags, scheme.scarcity_price, scheme.base_price)


def split_at_subscription(imports: np.ndarray, subscribed: float):
    """Hourly (below, above) split of imports at the subscribed level."""
    below = np.minimum(imports, subscribed)
    return below, imports - below


def tariff_cost_expost(
    scheme: TariffScheme,
    imports: np.ndarray,
    exports: np.ndarray,
    flags: Optional[ScarcityFlags] = None,
    subscribed: Optional[float] = None,
) -> float:
    """
    Annual tariff cost of metered flows, fixed charges included.

    Args:
        scheme: Tariff design
        imports: Hourly metered imports (kWh)
        exports: Hourly metered exports (kWh)
        flags: Scarcity flags, required for the dynamic design
        subscribed: Subscribed capacity (kW), required for the subscribed design

    Returns:
        float: EUR/yr; negative for the dynamic design when export bonuses dominate

    Raises:
        FlowMismatch: If the series lengths differ
        MissingSubscription: If a subscribed design gets no subscription level
        NegativeSubscription: If the subscription level is negative
        TariffError: If a dynamic design gets no scarcity flags
    """
    imports = np.asarray(imports, dtype=float)
    exports = np.asarray(exports, dtype=float)
    n_flags = len(flags) if flags is not None else len(imports)
    if not len(imports) == len(exports) == n_flags:
        raise FlowMismatch(len(imports), len(exports), n_flags)

    if isinstance(scheme, EnergyTariff):
        return scheme.fixed_annual + scheme.energy_price * float(np.sum(imports))

    if isinstance(scheme, TimeOfUseTariff):
        return float(tou_prices(scheme, len(imports)) @ imports)

    if isinstance(scheme, SubscribedCapacityTariff):
        if subscribed is None:
            raise MissingSubscription()
        if subscribed < 0:
            raise NegativeSubscription(subscribed)
        below, above = split_at_subscription(imports, subscribed)
        return (
            scheme.capacity_price * subscribed
            + scheme.below_price * float(np.sum(below))
            + scheme.above_price * float(np.sum(above))
        )

    if isinstance(scheme, DynamicTariff):
        if flags is None:
            raise TariffError("Dynamic tariff needs scarcity flags")
        bonus = scheme.export_bonus * float(exports[flags.flags].sum())
        return float(dynamic_prices(scheme, flags) @ imports) - bonus

    raise TariffError(f"Unknown tariff scheme {type(scheme).__name__}")


def hours_above_subscription(imports: np.ndarray, subscribed: float, tolerance: float = 1e-6) -> int:
    """Number of hours whose import exceeds the subscribed capacity."""
    if subscribed < 0:
        raise NegativeSubscription(subscribed)
    return int(np.count_nonzero(np.asarray(imports, dtype=float) > subscribed + tolerance))


def tariff_from_config(
    document: Mapping[str, Any], economic: Optional[EconomicParams] = None
) -> TariffScheme:
    """
    Build a tariff scheme from a scenario ``tariff`` object.

    The energy design's price falls back to ``economic.grid_tariff_flat``.

    Args:
        document: Mapping with a ``type`` tag and optional coefficient overrides
        economic: Economic parameters of the scenario

    Returns:
        TariffScheme: Validated scheme

    Raises:
        pydantic.ValidationError: On unknown tags or invalid coefficients
    """
    document = dict(document)
    if document.get("type") == "energy" and "energy_price" not in document and economic is not None:
        document["energy_price"] = economic.grid_tariff_flat
    scheme = TARIFF_ADAPTER.validate_python(document)
    logger.info(f"Tariff scheme selected: {scheme.type}")
    return scheme
