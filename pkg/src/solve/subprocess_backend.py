"""
Backends driving a solver executable over an LP file.

Each solve runs in its own working directory: the model is exported with
``export_lp``, the solver writes its native solution file and that file is
parsed back against the model.
"""

import shutil
import subprocess
import tempfile
from abc import abstractmethod
from pathlib import Path
from typing import List

from config.solver import SOLVER_CONFIG
from src.model.instance import ModelInstance

from .base_backend import BaseBackend
from .errors import BackendUnavailable, SolveError, SolverTimeLimit
from .lp_writer import export_lp
from .result import SolveResult
from .solution import CBC, HIGHS, parse_solution_file

# seconds granted beyond the solver's own time limit before it is killed
KILL_GRACE = 30.0


class SubprocessBackend(BaseBackend):
    dialect: str = ""

    @abstractmethod
    def command(self, executable: str, lp_file: Path, solution_file: Path, work_dir: Path) -> List[str]:
        """Command line solving ``lp_file`` into ``solution_file``."""
        pass

    def executable(self) -> str:
        candidate = self.config.executable or SOLVER_CONFIG["executables"][self.config.name]
        resolved = shutil.which(candidate)
        if resolved is None:
            raise BackendUnavailable(self.config.name, f"executable {candidate!r} not found")
        return resolved

    def _solve(self, model: ModelInstance) -> SolveResult:
        executable = self.executable()
        if self.config.work_dir is not None:
            work_dir = Path(self.config.work_dir)
            work_dir.mkdir(parents=True, exist_ok=True)
            return self._run(executable, model, work_dir)
        if self.config.keep_files:
            return self._run(executable, model, Path(tempfile.mkdtemp(prefix="zen_")))
        with tempfile.TemporaryDirectory(prefix="zen_") as tmp:
            return self._run(executable, model, Path(tmp))

    def _run(self, executable: str, model: ModelInstance, work_dir: Path) -> SolveResult:
        lp_file = export_lp(model, work_dir / "model.lp")
        solution_file = work_dir / "model.sol"
        cmd = self.command(executable, lp_file, solution_file, work_dir)
        timeout = self.config.time_limit + KILL_GRACE if self.config.time_limit is not None else None

        self.log.info(f"Running: {' '.join(cmd)}")
        try:
            completed = subprocess.run(
                cmd, cwd=work_dir, capture_output=True, text=True, timeout=timeout, check=False
            )
        except subprocess.TimeoutExpired as e:
            self.log.error(f"{self.config.name} killed after {timeout} s")
            raise SolverTimeLimit(self.config.name, timeout) from e
        except OSError as e:
            self.log.error(f"Cannot start {executable}: {str(e)}")
            raise BackendUnavailable(self.config.name, str(e)) from e

        if not solution_file.exists():
            tail = (completed.stderr or completed.stdout or "").strip().splitlines()[-5:]
            error_msg = f"{self.config.name} exited with {completed.returncode} and no solution file"
            self.log.error(error_msg + ("\n" + "\n".join(tail) if tail else ""))
            raise SolveError(error_msg)

        return parse_solution_file(solution_file, self.dialect, model)


class HighsBackend(SubprocessBackend):
    dialect = HIGHS

    def command(self, executable: str, lp_file: Path, solution_file: Path, work_dir: Path) -> List[str]:
        options_file = work_dir / "highs.opt"
        options = [f"mip_rel_gap = {self.config.mip_rel_gap}", f"threads = {self.config.threads}"]
        if self.config.time_limit is not None:
            options.append(f"time_limit = {self.config.time_limit}")
        options_file.write_text("\n".join(options) + "\n", encoding="ascii")
        return [
            executable,
            "--model_file", str(lp_file),
            "--solution_file", str(solution_file),
            "--options_file", str(options_file),
        ]


class CbcBackend(SubprocessBackend):
    dialect = CBC

    def command(self, executable: str, lp_file: Path, solution_file: Path, work_dir: Path) -> List[str]:
        cmd = [executable, str(lp_file), "ratio", str(self.config.mip_rel_gap), "threads", str(self.config.threads)]
        if self.config.time_limit is not None:
            cmd += ["sec", str(self.config.time_limit)]
        return cmd + ["solve", "solu", str(solution_file)]
