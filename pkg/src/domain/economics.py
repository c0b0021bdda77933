"""Lifetime discounting of annual cash flows."""

import numpy as np


def discount_factor(rate: float, lifetime_years: int) -> float:
    """
    Annuity factor: sum over y = 1..D of (1 + r)^-y.

    Args:
        rate: Discount rate per year, >= 0
        lifetime_years: Number of years D, >= 0

    Returns:
        float: Present value of 1 EUR paid at the end of each year for D years

    Raises:
        ValueError: If rate or lifetime_years is negative
    """
    if rate < 0:
        raise ValueError(f"Discount rate must be >= 0, got {rate}")
    if lifetime_years < 0:
        raise ValueError(f"Lifetime must be >= 0 years, got {lifetime_years}")
    if lifetime_years == 0:
        return 0.0
    if rate == 0:
        return float(lifetime_years)

    years = np.arange(1, lifetime_years + 1, dtype=float)
    return float(np.sum((1.0 + rate) ** -years))
