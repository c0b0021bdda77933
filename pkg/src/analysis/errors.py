"""Exceptions raised while reporting on solved scenarios."""


class AnalysisError(Exception):
    """Base exception for analysis errors."""

    pass


class MismatchedScenarios(AnalysisError):
    """Reports compared side by side come from different neighborhoods."""

    def __init__(self, label: str, fingerprint: str, expected: str):
        self.label = label
        self.fingerprint = fingerprint
        self.expected = expected
        super().__init__(
            f"Report {label!r} has neighborhood fingerprint {fingerprint}, baseline has {expected}"
        )


class NotOptimal(AnalysisError):
    def __init__(self, status: str):
        self.status = status
        super().__init__(f"Cannot report on a solve with status {status}")
