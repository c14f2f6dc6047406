"""Serialization of LinFormula to SMT-LIB2 (QF_LIA) and an external-solver driver."""

from __future__ import annotations

import enum
import os
import shlex
import shutil
import subprocess
import tempfile
import time
from dataclasses import dataclass

from .charset import CharPred
from .errors import SolverError, SolverTimeout
from .formula import (
    And, BoolConst, Cmp, Const, Formula, Ite, LinFormula, Not, Or, PredHolds,
    Scale, Sort, Sum, Term, Var, sort_constraint,
)
from .sexpr import Numeral, SList, Symbol, parse_sexprs, quote_symbol

SOLVER_ENV = "SYMPARIKH_SOLVER"
DEFAULT_SOLVER = "smt-solver"
FALLBACK_SOLVERS = ("z3", "cvc5")


def _int(k: int) -> str:
    return str(k) if k >= 0 else f"(- {-k})"


def _term(t: Term, out: list[str]) -> None:
    if isinstance(t, Var):
        out.append(quote_symbol(t.name))
    elif isinstance(t, Const):
        out.append(_int(t.value))
    elif isinstance(t, Sum):
        out.append("(+")
        for a in t.args:
            out.append(" ")
            _term(a, out)
        out.append(")")
    elif isinstance(t, Scale):
        out.append(f"(* {_int(t.coef)} ")
        _term(t.arg, out)
        out.append(")")
    elif isinstance(t, Ite):
        out.append("(ite ")
        _formula(t.cond, out)
        out.append(" ")
        _term(t.then, out)
        out.append(" ")
        _term(t.orelse, out)
        out.append(")")
    else:
        raise TypeError(t)


def _pred(p: CharPred, t: Term, out: list[str]) -> None:
    arg: list[str] = []
    _term(t, arg)
    a = "".join(arg)
    parts = []
    for lo, hi in p.intervals:
        if lo == hi:
            parts.append(f"(= {a} {lo})")
        else:
            parts.append(f"(and (<= {lo} {a}) (<= {a} {hi}))")
    if not parts:
        out.append("false")
    elif len(parts) == 1:
        out.append(parts[0])
    else:
        out.append("(or " + " ".join(parts) + ")")


def _formula(f: Formula, out: list[str]) -> None:
    if isinstance(f, BoolConst):
        out.append("true" if f.value else "false")
    elif isinstance(f, Cmp):
        out.append(f"({f.op} ")
        _term(f.lhs, out)
        out.append(" ")
        _term(f.rhs, out)
        out.append(")")
    elif isinstance(f, (And, Or)):
        out.append("(and" if isinstance(f, And) else "(or")
        for a in f.args:
            out.append(" ")
            _formula(a, out)
        out.append(")")
    elif isinstance(f, Not):
        out.append("(not ")
        _formula(f.arg, out)
        out.append(")")
    elif isinstance(f, PredHolds):
        _pred(f.pred, f.arg, out)
    else:
        raise TypeError(f)


def formula_to_smt2(f: Formula | Term) -> str:
    out: list[str] = []
    if isinstance(f, Term):
        _term(f, out)
    else:
        _formula(f, out)
    return "".join(out)


def emit_smt2(f: LinFormula, get_model: bool = False) -> str:
    """Deterministic QF_LIA script checking satisfiability of ``f``."""
    lines = []
    if get_model:
        lines.append("(set-option :produce-models true)")
    lines.append("(set-logic QF_LIA)")
    names = sorted(f.sorts)
    for v in names:
        lines.append(f"(declare-const {quote_symbol(v)} Int)")
    for v in names:
        s = f.sorts[v]
        if s is not Sort.INT:
            lines.append(f"(assert {formula_to_smt2(sort_constraint(v, s))})")
    if not (isinstance(f.body, BoolConst) and f.body.value):
        lines.append(f"(assert {formula_to_smt2(f.body)})")
    lines.append("(check-sat)")
    if get_model:
        lines.append("(get-model)")
    return "\n".join(lines) + "\n"


# -- running a solver --------------------------------------------------------


class Status(enum.Enum):
    SAT = "sat"
    UNSAT = "unsat"
    UNKNOWN = "unknown"
    TIMEOUT = "timeout"
    ERROR = "error"


@dataclass
class SolveResult:
    status: Status
    model: dict[str, int] | None = None
    detail: str = ""
    elapsed: float = 0.0

    @property
    def is_sat(self) -> bool:
        return self.status is Status.SAT

    @property
    def is_unsat(self) -> bool:
        return self.status is Status.UNSAT


def resolve_solver(cmd: str | list[str] | None = None) -> list[str]:
    """Solver argv prefix: explicit value, then $SYMPARIKH_SOLVER, then PATH lookup."""
    if cmd is None:
        cmd = os.environ.get(SOLVER_ENV) or None
    if cmd is None:
        for name in (DEFAULT_SOLVER, *FALLBACK_SOLVERS):
            if shutil.which(name):
                return [name]
        raise SolverError(
            f"no SMT solver found: set ${SOLVER_ENV}, pass --solver, "
            f"or put {DEFAULT_SOLVER!r} on PATH")
    return shlex.split(cmd) if isinstance(cmd, str) else list(cmd)


def _parse_model(text: str) -> dict[str, int]:
    model: dict[str, int] = {}
    try:
        exprs = parse_sexprs(text)
    except Exception:
        return model
    stack = list(exprs)
    while stack:
        e = stack.pop()
        if not isinstance(e, SList):
            continue
        if len(e) == 5 and isinstance(e[0], Symbol) and e[0].name == "define-fun":
            value = _model_value(e[4])
            if value is not None and isinstance(e[1], Symbol):
                model[e[1].name] = value
        else:
            stack.extend(e)
    return model


def _model_value(e) -> int | None:
    if isinstance(e, Numeral):
        return e.value
    if isinstance(e, SList) and len(e) == 2 and isinstance(e[0], Symbol) and e[0].name == "-":
        inner = _model_value(e[1])
        return None if inner is None else -inner
    return None


def solve(script: str, solver_cmd: str | list[str] | None = None,
          timeout: float = 30.0) -> SolveResult:
    """Run the solver on ``script`` (written to a temp file).

    The first output line decides the status.  If the script requested a
    model and the answer is sat, integer bindings are parsed from the rest.
    """
    argv = resolve_solver(solver_cmd)
    fd, path = tempfile.mkstemp(suffix=".smt2", prefix="symparikh-")
    start = time.monotonic()
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(script)
        try:
            proc = subprocess.run(argv + [path], capture_output=True, text=True, timeout=timeout)
        except subprocess.TimeoutExpired:
            return SolveResult(Status.TIMEOUT, detail=f"killed after {timeout}s",
                               elapsed=time.monotonic() - start)
        except OSError as exc:
            return SolveResult(Status.ERROR, detail=str(exc), elapsed=time.monotonic() - start)
    finally:
        os.unlink(path)
    elapsed = time.monotonic() - start
    lines = proc.stdout.splitlines()
    first = lines[0].strip() if lines else ""
    if first in ("sat", "unsat", "unknown"):
        status = Status(first)
        model = _parse_model("\n".join(lines[1:])) if status is Status.SAT else None
        return SolveResult(status, model, elapsed=elapsed)
    if first == "timeout":
        return SolveResult(Status.TIMEOUT, detail="solver reported timeout", elapsed=elapsed)
    detail = (proc.stderr.strip() or proc.stdout.strip() or f"exit status {proc.returncode}")
    return SolveResult(Status.ERROR, detail=detail, elapsed=elapsed)


def check(f: LinFormula, solver_cmd: str | list[str] | None = None, timeout: float = 30.0,
          get_model: bool = False) -> SolveResult:
    """Emit and solve; raise on timeout or solver failure."""
    res = solve(emit_smt2(f, get_model=get_model), solver_cmd, timeout)
    if res.status is Status.TIMEOUT:
        raise SolverTimeout(res.detail)
    if res.status is Status.ERROR:
        raise SolverError(res.detail)
    return res


def is_sat(f: LinFormula, solver_cmd: str | list[str] | None = None, timeout: float = 30.0) -> bool:
    res = check(f, solver_cmd, timeout)
    if res.status is Status.UNKNOWN:
        raise SolverError("solver answered unknown")
    return res.is_sat
