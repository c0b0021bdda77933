"""Exceptions raised while exporting, solving and reading back models."""

from pathlib import Path
from typing import Union


class SolveError(Exception):
    """Base exception for solver-related errors."""

    pass


class EmptyModel(SolveError):
    def __init__(self):
        super().__init__("Model has no variables")


class BackendUnavailable(SolveError):
    """The configured solver backend cannot be started."""

    def __init__(self, backend: str, detail: str):
        self.backend = backend
        self.detail = detail
        super().__init__(f"Solver backend {backend!r} unavailable: {detail}")


class SolverTimeLimit(SolveError):
    def __init__(self, backend: str, seconds: float):
        self.backend = backend
        self.seconds = seconds
        super().__init__(f"Solver backend {backend!r} exceeded {seconds} s")


class ParseError(SolveError):
    """A solution or LP file does not follow its format."""

    def __init__(self, path: Union[str, Path], line: int, column: int, detail: str):
        self.path = str(path)
        self.line = line
        self.column = column
        self.detail = detail
        super().__init__(f"{self.path}:{line}:{column}: {detail}")


class SolutionOverflow(ParseError):
    """A value in a solution file does not fit a double."""

    pass


class UnknownVariable(ParseError):
    """A solution file names a variable the model does not have."""

    pass
