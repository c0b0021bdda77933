"""Exceptions raised by tariff evaluation."""


class TariffError(Exception):
    """Base exception for tariff errors."""

    pass


class NegativeSubscription(TariffError):
    def __init__(self, subscribed: float):
        self.subscribed = subscribed
        super().__init__(f"Subscribed capacity must be >= 0, got {subscribed}")


class MissingSubscription(TariffError):
    """A subscribed-capacity cost was requested without a subscription level."""

    def __init__(self):
        super().__init__("Subscribed capacity tariff needs the subscribed level")


class FlowMismatch(TariffError):
    def __init__(self, n_imports: int, n_exports: int, n_flags: int):
        self.lengths = (n_imports, n_exports, n_flags)
        super().__init__(
            f"Imports ({n_imports}), exports ({n_exports}) and scarcity flags ({n_flags}) "
            f"must have the same length"
        )
