"""Backend registry and the solve entry point."""

from typing import Dict, Type, Union

from src.model.instance import ModelInstance

from .base_backend import BackendConfig, BaseBackend
from .errors import BackendUnavailable
from .result import SolveResult
from .scipy_backend import ScipyBackend
from .subprocess_backend import CbcBackend, HighsBackend

BACKENDS: Dict[str, Type[BaseBackend]] = {
    "scipy": ScipyBackend,
    "highs": HighsBackend,
    "cbc": CbcBackend,
}


def get_backend(config: Union[BackendConfig, str]) -> BaseBackend:
    """Backend for a configuration, or for a name with SOLVER_CONFIG defaults."""
    if isinstance(config, str):
        if config not in BACKENDS:
            raise BackendUnavailable(config, f"unknown backend, expected one of {sorted(BACKENDS)}")
        config = BackendConfig.from_config(name=config)
    return BACKENDS[config.name](config)


def solve(model: ModelInstance, backend: Union[BackendConfig, BaseBackend, str, None] = None) -> SolveResult:
    """
    Solve a model with a backend.

    Args:
        model: Model to solve
        backend: Backend instance, configuration or name; SOLVER_CONFIG defaults when omitted

    Returns:
        SolveResult: Solve outcome

    Raises:
        EmptyModel: If the model has no variables
        BackendUnavailable: If the backend cannot be started
        SolverTimeLimit: If the solver process has to be killed
        ParseError: If the solution file is malformed
    """
    if backend is None:
        backend = BackendConfig.from_config()
    if not isinstance(backend, BaseBackend):
        backend = get_backend(backend)
    return backend.solve(model)
