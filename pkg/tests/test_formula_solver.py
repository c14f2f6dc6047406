import os
import stat

import pytest

from symparikh.charset import CharPred
from symparikh.errors import SortMismatch, SolverError, UnboundVariable
from symparikh.formula import (
    TRUE, LinFormula, Sort, Var, conj, eq, evaluate, ge, ite, lt, pred_holds, subst, total,
)
from symparikh.parikh_core import automaton_flow_formula
from symparikh.regex import Char, Concat, Star, compile_regex
from symparikh.solver import Status, check, emit_smt2, formula_to_smt2, resolve_solver, solve

from helpers import A, B

x, y, v = Var("x"), Var("y"), Var("v")


def test_subst_examples():
    f = LinFormula(eq(x, y), {"x": Sort.COUNT, "y": Sort.COUNT})
    g = subst(f, {"y": 3})
    assert g.body == eq(x, 3) and set(g.sorts) == {"x"}
    assert subst(f, {}) == f
    p = CharPred.range(97, 99)
    h = LinFormula(pred_holds(p, v), {"v": Sort.CHAR})
    assert evaluate(subst(h, {"v": 97}), {})
    assert not evaluate(subst(h, {"v": 100}), {})


def test_subst_sort_checks():
    f = LinFormula(eq(x, y), {"x": Sort.COUNT, "y": Sort.INT})
    with pytest.raises(SortMismatch):
        subst(f, {"x": -1})
    with pytest.raises(SortMismatch):
        subst(f, {"x": Var("y")})
    with pytest.raises(SortMismatch):
        subst(f, {"x": Var("undeclared")})


def test_evaluate_examples():
    assert evaluate(eq(Var("xa"), Var("xb")), {"xa": 2, "xb": 2})
    assert evaluate(TRUE, {})
    assert not evaluate(pred_holds(CharPred.range(97, 99), v), {"v": 100})
    assert evaluate(eq(ite(ge(x, 1), 5, 7), 5), {"x": 1})
    with pytest.raises(UnboundVariable):
        evaluate(eq(x, 1), {})
    # sort ranges are part of a LinFormula's meaning
    assert not evaluate(LinFormula(TRUE, {"x": Sort.COUNT}), {"x": -1})


def test_rename_keeps_selected_names():
    f = LinFormula(lt(x, y), {"x": Sort.COUNT, "y": Sort.COUNT})
    g = f.rename("p.", keep=["y"])
    assert set(g.sorts) == {"p.x", "y"}
    assert g.body == lt(Var("p.x"), y)


def test_emit_examples():
    assert "(assert (= x 3))" in emit_smt2(LinFormula(eq(x, 3), {"x": Sort.COUNT}))
    assert formula_to_smt2(pred_holds(CharPred.range(97, 99), v)) == "(and (<= 97 v) (<= v 99))"
    text = emit_smt2(LinFormula(eq(x, -4), {"x": Sort.INT}))
    assert "(- 4)" in text


@pytest.mark.needs_solver
def test_solve_trivial_scripts():
    assert solve("(assert false)(check-sat)").status is Status.UNSAT
    assert solve("(assert true)(check-sat)").status is Status.SAT


@pytest.mark.needs_solver
def test_flow_formula_model_has_equal_counts():
    a = compile_regex(Star(Concat(Char(A), Char(B))))
    flow = automaton_flow_formula(a)
    ca, cb = (Var(flow.label_count_vars[g]) for g in sorted(flow.label_count_vars))
    f = LinFormula(conj(flow.formula.body, ge(total([ca, cb]), 4)), flow.formula.sorts)
    res = check(f, get_model=True)
    assert res.is_sat
    assert res.model[ca.name] == res.model[cb.name] >= 2
    assert evaluate(f, res.model)


def _script(tmp_path, body):
    path = tmp_path / "fake-solver"
    path.write_text("#!/bin/sh\n" + body + "\n")
    path.chmod(path.stat().st_mode | stat.S_IEXEC)
    return str(path)


def test_solver_failures(tmp_path):
    assert solve("(check-sat)", _script(tmp_path, "echo oops >&2; exit 1")).status is Status.ERROR
    assert solve("(check-sat)", _script(tmp_path, "sleep 5"), timeout=0.3).status is Status.TIMEOUT
    assert solve("(check-sat)", str(tmp_path / "missing")).status is Status.ERROR
    with pytest.raises(SolverError):
        check(LinFormula(TRUE), _script(tmp_path, "exit 3"))


def test_solver_resolution(monkeypatch):
    monkeypatch.setenv("SYMPARIKH_SOLVER", "mysolver --flag")
    assert resolve_solver() == ["mysolver", "--flag"]
    assert resolve_solver("other") == ["other"]
    monkeypatch.delenv("SYMPARIKH_SOLVER")
    monkeypatch.setenv("PATH", os.devnull)
    with pytest.raises(SolverError):
        resolve_solver()
