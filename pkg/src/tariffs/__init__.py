from .costs import hours_above_subscription, tariff_cost_expost, tariff_from_config
from .errors import FlowMismatch, MissingSubscription, NegativeSubscription, TariffError
from .scarcity import ScarcityFlags, TouBand, scarcity_flags, tou_band
from .schemes import (
    SCHEME_TAGS,
    TARIFF_ADAPTER,
    DynamicTariff,
    EnergyTariff,
    SubscribedCapacityTariff,
    TariffScheme,
    TimeOfUseTariff,
)
from .terms import TariffTerms, tariff_linear_terms
