from .base_backend import BackendConfig, BaseBackend
from .errors import (
    BackendUnavailable,
    EmptyModel,
    ParseError,
    SolutionOverflow,
    SolveError,
    SolverTimeLimit,
    UnknownVariable,
)
from .lp_reader import read_lp
from .lp_writer import export_lp, lp_name, model_name
from .replay import ReplayReport, replay
from .result import SolveResult, SolveStatus
from .scipy_backend import ScipyBackend
from .solution import parse_solution_file, write_solution_file
from .solver import BACKENDS, get_backend, solve
from .subprocess_backend import CbcBackend, HighsBackend
