"""
Exceptions raised while validating neighborhood specifications.

Each violation class carries the offending identifier as an attribute so
callers can report it without parsing the message.
"""

from typing import List, Sequence


class DomainError(Exception):
    """Base exception for domain-level errors."""

    pass


class SpecViolation(DomainError):
    """A single broken invariant of a neighborhood specification."""

    pass


class MissingSeries(SpecViolation):
    """A referenced time series is absent from the series set."""

    def __init__(self, series_id: str):
        self.series_id = series_id
        super().__init__(f"Missing series: {series_id}")


class BadUnit(SpecViolation):
    """A value lies outside the range its unit allows, or a unit tag is wrong."""

    def __init__(self, subject: str, detail: str):
        self.subject = subject
        self.detail = detail
        super().__init__(f"Bad unit or range for {subject}: {detail}")


class NegativeCost(SpecViolation):
    """A cost or price field is negative."""

    def __init__(self, subject: str, field: str, value: float):
        self.subject = subject
        self.field = field
        self.value = value
        super().__init__(f"Negative {field} for {subject}: {value}")


class InvalidReference(SpecViolation):
    """An identifier refers to nothing, or is defined twice."""

    def __init__(self, subject: str, detail: str):
        self.subject = subject
        self.detail = detail
        super().__init__(f"Invalid reference in {subject}: {detail}")


class SpecValidationError(DomainError):
    """Aggregate error listing every violation found in one validation pass."""

    def __init__(self, violations: Sequence[Exception]):
        self.violations: List[Exception] = list(violations)
        lines = "\n".join(f"- {v}" for v in self.violations)
        super().__init__(
            f"Neighborhood specification has {len(self.violations)} violation(s):\n{lines}"
        )
