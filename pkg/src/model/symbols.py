"""
Registry of model symbols and unit rules.

``SYMBOLS`` maps every symbol of the objective and CO2 balance to the single
place that holds it: a field of a domain or tariff type, or a model variable
symbol.
"""

from typing import Dict, List, Set

from .instance import ModelInstance

# symbol -> "Type.field", "series:<series id>" or "var:<model symbol>"
SYMBOLS: Dict[str, str] = {
    "x_i": "var:x",
    "C_i^disc": "TechnologySpec.discounted_investment_cost",
    "C_i^maint": "TechnologySpec.annual_maintenance_cost",
    "eta_est": "TechnologySpec.efficiency",
    "r": "EconomicParams.discount_rate",
    "D": "EconomicParams.lifetime_years",
    "P^grid": "EconomicParams.grid_tariff_flat",
    "P^ret": "EconomicParams.retailer_tariff",
    "C_hg": "EconomicParams.heating_grid_cost",
    "b_hg": "EconomicParams.heating_grid_enabled",
    "phi_e": "EconomicParams.el_co2_factor",
    "phi_f": "FuelSpec.co2_factor",
    "P_f^fuel": "FuelSpec.price",
    "P_t^spot": "series:spot_price",
    "f_f,t": "var:fuel",
    "y_t^imp": "var:imp",
    "y_t^exp": "var:exp_tot",
    "y_t,g^exp": "var:gexp",
    "y_t,est^gb_imp": "var:gb_imp",
    "y_t,est^gb_exp": "var:gb_exp",
    "y_t,est^pb_exp": "var:pb_exp",
    "y_t^imp_tot": "var:imp_tot",
    "y_t^exp_tot": "var:exp_tot",
    "y^imp_low/med/peak": "TimeOfUseTariff.low_hours",
    "y_t^imp_below": "var:below",
    "y_t^imp_above": "var:above",
    "c^sub": "var:c_sub",
    "C^sc": "DynamicTariff.scarcity_price",
    "delta_t^sc": "ScarcityFlags.flags",
}

# Units a variable may carry inside a row of the given unit. Rows are hourly,
# so kW capacities enter kWh rows with an implicit one-hour step.
ROW_VARIABLE_UNITS: Dict[str, Set[str]] = {
    "kWh": {"kWh", "kW"},
    "gCO2": {"kWh"},
    "m2": {"kW"},
}


def dimensional_audit(model: ModelInstance) -> List[str]:
    """
    Rows mixing variables whose units do not fit the row unit.

    Returns:
        List[str]: Offending row names, empty for a consistent model
    """
    offending = []
    matrix = model.matrix
    for row, (name, unit) in enumerate(zip(model.row_names, model.row_units)):
        allowed = ROW_VARIABLE_UNITS.get(unit)
        columns = matrix.indices[matrix.indptr[row]:matrix.indptr[row + 1]]
        if allowed is None or any(model.var_units[c] not in allowed for c in columns):
            offending.append(name)
    return offending
