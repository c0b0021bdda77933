from .builder import ModelBuilder, element_name
from .errors import DuplicateName, MissingVariable, ModelError, UnknownSense
from .instance import EQ, GE, LE, MAXIMIZE, MINIMIZE, ModelInstance
from .symbols import SYMBOLS, dimensional_audit
from .zen import (
    COST_PARTS,
    HEATING_GRID_CONSTANT,
    TARIFF_FIXED_CONSTANT,
    ModelOptions,
    ZenModelBuilder,
    add_co2_balance,
    add_electricity_balance,
    add_export_limit,
    add_heat_balance,
    add_storage_dynamics,
    assemble_objective,
    build_model,
)
