"""Exceptions raised while loading scenario documents."""

from typing import List, Tuple


class ConfigError(Exception):
    """Base exception for scenario configuration errors."""

    pass


class ConfigSchemaError(ConfigError):
    """
    The scenario document does not match the schema.

    Attributes:
        errors: (JSON pointer, message) per violation
    """

    def __init__(self, errors: List[Tuple[str, str]]):
        self.errors = errors
        lines = "\n".join(f"  {pointer}: {message}" for pointer, message in errors)
        super().__init__(f"Scenario document has {len(errors)} schema error(s):\n{lines}")

    @property
    def pointers(self) -> List[str]:
        return [pointer for pointer, _ in self.errors]
