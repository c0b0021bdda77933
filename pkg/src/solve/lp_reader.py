"""
Reader for the CPLEX LP subset written by ``export_lp``.

Supports one objective, labelled constraints spanning any number of lines,
the Bounds section (``free``, ``>=``, ``<=``, ``=``, double-sided) and a
Binaries section. Variable order follows the Bounds section.
"""

import re
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
from scipy import sparse

from src.model.instance import EQ, GE, LE, MAXIMIZE, MINIMIZE, ModelInstance

from .errors import ParseError
from .lp_writer import model_name

TOKEN = re.compile(
    r"(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<sense><=|>=|=<|=>|<|>|=)"
    r"|(?P<sign>[+-])"
    r"|(?P<label>[A-Za-z_][\w@().\[\]]*\s*:)"
    r"|(?P<name>[A-Za-z_][\w@().\[\]]*)"
    r"|(?P<space>\s+)"
)

SECTIONS = {
    "minimize": "objective", "minimum": "objective", "min": "objective",
    "maximize": "objective", "maximum": "objective", "max": "objective",
    "subject to": "constraints", "such that": "constraints", "st": "constraints", "s.t.": "constraints",
    "bounds": "bounds", "bound": "bounds",
    "binaries": "binaries", "binary": "binaries", "bin": "binaries",
    "end": "end",
}
SENSE_ALIASES = {"<=": LE, "=<": LE, "<": LE, ">=": GE, "=>": GE, ">": GE, "=": EQ}
INFINITY_WORDS = {"inf", "infinity"}

Token = Tuple[str, str, int, int]


class _Parser:
    def __init__(self, path: Path):
        self.path = path
        self.sense = MINIMIZE
        self.objective: Dict[str, float] = {}
        self.rows: List[Tuple[str, Dict[str, float], str, float]] = []
        self.bounds: Dict[str, Tuple[float, float]] = {}
        self.binaries: List[str] = []
        self.order: Dict[str, None] = {}

    def error(self, line: int, column: int, detail: str) -> ParseError:
        return ParseError(self.path, line, column, detail)

    def tokens(self, text: str, line: int) -> List[Token]:
        out: List[Token] = []
        pos = 0
        while pos < len(text):
            match = TOKEN.match(text, pos)
            if match is None:
                raise self.error(line, pos + 1, f"unexpected character {text[pos]!r}")
            if match.lastgroup != "space":
                out.append((match.lastgroup, match.group().strip(), line, pos + 1))
            pos = match.end()
        return out

    def see(self, name: str) -> None:
        if name not in self.bounds:
            self.order.setdefault(name)

    def linear(self, tokens: List[Token], end_line: int) -> Dict[str, float]:
        """Parse ``[sign] [number] name ...`` into a coefficient map."""
        coefs: Dict[str, float] = {}
        i = 0
        while i < len(tokens):
            sign = 1.0
            while i < len(tokens) and tokens[i][0] == "sign":
                sign = -sign if tokens[i][1] == "-" else sign
                i += 1
            coef = 1.0
            if i < len(tokens) and tokens[i][0] == "number":
                coef = float(tokens[i][1])
                i += 1
            if i >= len(tokens):
                raise self.error(end_line, 1, "expression ends without a variable")
            kind, text, line, column = tokens[i]
            if kind != "name":
                raise self.error(line, column, f"expected a variable name, got {text!r}")
            coefs[text] = coefs.get(text, 0.0) + sign * coef
            self.see(text)
            i += 1
        return coefs

    def constant(self, tokens: List[Token], line: int) -> float:
        sign = 1.0
        i = 0
        while i < len(tokens) and tokens[i][0] == "sign":
            sign = -sign if tokens[i][1] == "-" else sign
            i += 1
        if i != len(tokens) - 1:
            raise self.error(line, 1, "expected a single number")
        kind, text, line, column = tokens[i]
        if kind == "number":
            return sign * float(text)
        if kind == "name" and text.lower() in INFINITY_WORDS:
            return sign * np.inf
        raise self.error(line, column, f"expected a number, got {text!r}")

    def objective_section(self, tokens: List[Token], end_line: int) -> None:
        if tokens and tokens[0][0] == "label":
            tokens = tokens[1:]
        self.objective = self.linear(tokens, end_line)

    def constraint_section(self, tokens: List[Token], end_line: int) -> None:
        i = 0
        while i < len(tokens):
            kind, text, line, column = tokens[i]
            if kind != "label":
                raise self.error(line, column, "constraints must be labelled")
            label = text[:-1].strip()
            j = i + 1
            while j < len(tokens) and tokens[j][0] != "sense":
                j += 1
            if j >= len(tokens):
                raise self.error(end_line, 1, f"constraint {label} has no sense")
            k = j + 1
            if k < len(tokens) and tokens[k][0] == "sign":
                k += 1
            if k >= len(tokens) or tokens[k][0] != "number":
                raise self.error(tokens[j][2], tokens[j][3], f"constraint {label} has no right-hand side")
            coefs = self.linear(tokens[i + 1:j], tokens[j][2])
            rhs = self.constant(tokens[j + 1:k + 1], tokens[j][2])
            self.rows.append((label, coefs, SENSE_ALIASES[tokens[j][1]], rhs))
            i = k + 1

    def bound_line(self, tokens: List[Token], line: int) -> None:
        texts = [t[1].lower() for t in tokens]
        kinds = [t[0] for t in tokens]
        if len(tokens) == 2 and kinds[0] == "name" and texts[1] == "free":
            self._set_bound(tokens[0][1], -np.inf, np.inf)
            return
        senses = [i for i, k in enumerate(kinds) if k == "sense"]
        if len(senses) == 2:
            lower = self.constant(tokens[:senses[0]], line)
            name_tokens = tokens[senses[0] + 1:senses[1]]
            upper = self.constant(tokens[senses[1] + 1:], line)
            if len(name_tokens) != 1 or name_tokens[0][0] != "name":
                raise self.error(line, 1, "malformed double bound")
            self._set_bound(name_tokens[0][1], lower, upper)
            return
        if len(senses) == 1 and senses[0] == 1 and kinds[0] == "name":
            name = tokens[0][1]
            value = self.constant(tokens[2:], line)
            lb, ub = self.bounds.get(name, (0.0, np.inf))
            sense = SENSE_ALIASES[tokens[1][1]]
            if sense == GE:
                lb = value
            elif sense == LE:
                ub = value
            else:
                lb = ub = value
            self._set_bound(name, lb, ub)
            return
        raise self.error(line, 1, "unsupported bound")

    def _set_bound(self, name: str, lb: float, ub: float) -> None:
        self.order.pop(name, None)
        self.bounds[name] = (lb, ub)


def _section_of(line: str) -> Optional[str]:
    return SECTIONS.get(" ".join(line.lower().split()))


def read_lp(path: Union[str, Path]) -> ModelInstance:
    """
    Read an LP file written by ``export_lp``.

    Args:
        path: LP file

    Returns:
        ModelInstance: Model with names mapped back to ``sym[asset][t]`` form

    Raises:
        ParseError: On anything outside the supported subset
    """
    path = Path(path)
    parser = _Parser(path)
    with open(path, encoding="ascii") as f:
        raw_lines = f.read().splitlines()

    section: Optional[str] = None
    pending: List[Token] = []

    def flush(end_line: int) -> None:
        if section == "objective":
            parser.objective_section(pending, end_line)
        elif section == "constraints":
            parser.constraint_section(pending, end_line)
        pending.clear()

    ended = False
    for number, raw in enumerate(raw_lines, start=1):
        text = raw.split("\\", 1)[0]
        if not text.strip():
            continue
        keyword = _section_of(text)
        if keyword is not None:
            flush(number)
            if keyword == "objective":
                parser.sense = MAXIMIZE if text.strip().lower().startswith("max") else MINIMIZE
            if keyword == "end":
                ended = True
                break
            section = keyword
            continue
        if section is None:
            raise parser.error(number, 1, "content before the objective section")
        tokens = parser.tokens(text, number)
        if section == "bounds":
            parser.bound_line(tokens, number)
        elif section == "binaries":
            for kind, name, line, column in tokens:
                if kind != "name":
                    raise parser.error(line, column, f"expected a variable name, got {name!r}")
                parser.see(name)
                parser.binaries.append(name)
        else:
            pending.extend(tokens)
    if not ended:
        raise parser.error(len(raw_lines) + 1, 1, "missing End")

    return _instance(parser)


def _instance(parser: _Parser) -> ModelInstance:
    names = list(parser.bounds) + list(parser.order)
    index = {name: j for j, name in enumerate(names)}
    binaries = set(parser.binaries)

    rows, cols, vals = [], [], []
    for i, (_, coefs, _, _) in enumerate(parser.rows):
        for name, coef in coefs.items():
            if coef != 0.0:
                rows.append(i)
                cols.append(index[name])
                vals.append(coef)
    matrix = sparse.csr_matrix((vals, (rows, cols)), shape=(len(parser.rows), len(names)))
    matrix.sort_indices()

    objective = np.zeros(len(names))
    for name, coef in parser.objective.items():
        objective[index[name]] = coef

    lb = np.array([parser.bounds.get(n, (0.0, np.inf))[0] for n in names], dtype=float)
    ub = np.array([parser.bounds.get(n, (0.0, np.inf))[1] for n in names], dtype=float)
    binary = np.array([n in binaries for n in names], dtype=bool)
    lb[binary] = np.maximum(lb[binary], 0.0)
    ub[binary] = np.minimum(ub[binary], 1.0)

    return ModelInstance(
        var_names=tuple(model_name(n) for n in names),
        var_lb=lb,
        var_ub=ub,
        var_binary=binary,
        var_units=tuple("" for _ in names),
        row_names=tuple(model_name(r[0]) for r in parser.rows),
        matrix=matrix,
        row_senses=tuple(r[2] for r in parser.rows),
        rhs=np.array([r[3] for r in parser.rows], dtype=float),
        row_units=tuple("" for _ in parser.rows),
        objective=objective,
        sense=parser.sense,
        objective_parts={"objective": objective},
    )
