"""End-to-end check of a script: parse, abstract, solve, report."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Sequence

from .abstraction import Mode, abstract_script
from .sfa import DEFAULT_STATE_CAP
from .smtlib import parse_script
from .solver import Status, emit_smt2, solve
from .errors import SolverError, SolverTimeout
from .strlang import Script
from .symbolic import EncodeOpts

UNSAT = "unsat"
UNKNOWN = "unknown"


@dataclass
class Verdict:
    verdict: str
    reason: str = ""
    num_vars: int = 0
    elapsed: float = 0.0
    warnings: list[str] = field(default_factory=list)


def check_script(script: Script | str, mode: Mode | str = Mode.REGEX,
                 opts: EncodeOpts | None = None, complement_cap: int = DEFAULT_STATE_CAP,
                 solver: str | None = None, timeout: float = 30.0,
                 dump_smt2: str | Path | None = None) -> Verdict:
    """``unsat`` when the abstraction is unsatisfiable, otherwise ``unknown``.

    Raises :class:`SolverTimeout` or :class:`SolverError` when the solver
    gives no answer.
    """
    start = time.monotonic()
    if isinstance(script, str):
        script = parse_script(script)
    formula, ctx = abstract_script(script, mode, opts, complement_cap)
    text = emit_smt2(formula)
    if dump_smt2 is not None:
        Path(dump_smt2).write_text(text)
    res = solve(text, solver, timeout)
    elapsed = time.monotonic() - start
    if res.status is Status.TIMEOUT:
        raise SolverTimeout(res.detail)
    if res.status is Status.ERROR:
        raise SolverError(res.detail)
    if res.status is Status.UNSAT:
        verdict, reason = UNSAT, ""
    elif res.status is Status.SAT:
        verdict, reason = UNKNOWN, "abstraction satisfiable"
    else:
        verdict, reason = UNKNOWN, "solver returned unknown"
    return Verdict(verdict, reason, formula.num_vars, elapsed, list(ctx.warnings))


# -- benchmark generation ----------------------------------------------------


def default_pool() -> list[str]:
    text = resources.files("symparikh").joinpath("data/wordeq_pool.txt").read_text()
    return load_pool_text(text)


def load_pool_text(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def example_path(name: str = "ex_we.smt2") -> Path:
    return Path(str(resources.files("symparikh").joinpath(f"data/{name}")))


def _seq(parts: Sequence[str]) -> str:
    return parts[0] if len(parts) == 1 else "(re.++ " + " ".join(parts) + ")"


def wordeq_script(rng: random.Random, pool: Sequence[str]) -> str:
    """One benchmark: three memberships over shared building blocks plus a word equation."""
    if not pool:
        raise ValueError("regex pool is empty")
    n, m = rng.randint(1, 3), rng.randint(1, 3)
    first = _seq([rng.choice(pool) for _ in range(n)])
    second = _seq([rng.choice(pool) for _ in range(m)])
    names = ("x1", "x2", "x3")
    while True:
        lhs = [rng.choice(names) for _ in range(3)]
        rhs = [rng.choice(names) for _ in range(3)]
        if set(lhs) | set(rhs) == set(names):
            break
    lines = ["(set-logic QF_SLIA)"]
    lines += [f"(declare-fun {v} () String)" for v in names]
    lines.append(f"(assert (str.in_re x1 (re.* {first})))")
    lines.append(f"(assert (str.in_re x2 (re.++ (re.+ {first}) (re.+ {second}))))")
    lines.append(f"(assert (str.in_re x3 (re.* {second})))")
    lines.append(f"(assert (= (str.++ {' '.join(lhs)}) (str.++ {' '.join(rhs)})))")
    lines.append("(check-sat)")
    return "\n".join(lines) + "\n"


def gen_wordeq(seed: int, count: int, pool: Sequence[str] | None = None) -> list[str]:
    rng = random.Random(seed)
    pool = list(pool) if pool is not None else default_pool()
    return [wordeq_script(rng, pool) for _ in range(count)]
