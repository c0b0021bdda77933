"""Exceptions raised while constructing optimization models."""


class ModelError(Exception):
    """Base exception for model construction errors."""

    pass


class MissingVariable(ModelError):
    """A term refers to a variable that was never registered."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"Missing variable: {name}")


class DuplicateName(ModelError):
    """A variable or constraint name is registered twice."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"Duplicate name: {name}")


class UnknownSense(ModelError):
    def __init__(self, sense: str):
        self.sense = sense
        super().__init__(f"Unknown constraint sense {sense!r}, expected one of <=, =, >=")
