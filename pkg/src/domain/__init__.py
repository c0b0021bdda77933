from .assets import Asset, asset_id, expand_assets, heat_pump_cop
from .economics import discount_factor
from .errors import (
    BadUnit,
    DomainError,
    InvalidReference,
    MissingSeries,
    NegativeCost,
    SpecValidationError,
    SpecViolation,
)
from .types import (
    ELECTRICITY_CO2_FACTOR,
    FUEL_CO2_FACTORS,
    BuildingType,
    Carrier,
    EconomicParams,
    FuelSpec,
    Level,
    NeighborhoodSpec,
    TechnologyKind,
    TechnologySpec,
)
from .validation import NeighborhoodValidator, ValidatedSpec, validate_neighborhood
