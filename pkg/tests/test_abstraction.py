import pytest

from symparikh.abstraction import (
    AbstractionCtx, Mode, abstract_script, abstract_sexp, select_predicates, to_nnf,
)
from symparikh.charset import CharPred
from symparikh.formula import LinFormula, conj, eq, eval_term
from symparikh.pipeline import example_path
from symparikh.regex import Char, Concat, Loop, Not, Or, Plus, Star
from symparikh.smtlib import parse_script
from symparikh.strlang import (
    BoolAnd, BoolNot, BoolOr, InRe, Lit, NotInRe, Replace, Script, SVar,
)

from helpers import A, B, pin, sat, with_extra

TOP = CharPred.top()
ca, cb = CharPred.char(A), CharPred.char(B)
x, y = SVar("x"), SVar("y")
r = Star(Char(A))
HEADER = "(declare-fun x () String)(declare-fun y () String)(declare-fun z () String)"


def script(*asserts: str) -> Script:
    return parse_script(HEADER + "".join(f"(assert {a})" for a in asserts))


def vec(name, n=3):
    return [f"str.{name}.{i}" for i in range(n)]


def test_nnf():
    p, q = InRe(x, r), InRe(y, r)
    assert to_nnf(BoolNot(BoolAnd((p, q)))) == BoolOr((NotInRe(x, r), NotInRe(y, r)))
    assert to_nnf(BoolNot(BoolNot(p))) == p
    assert to_nnf(BoolNot(p)) == NotInRe(x, r)
    assert to_nnf(BoolNot(NotInRe(x, r))) == p


def test_predicate_selection():
    s = parse_script(example_path().read_text())
    assert select_predicates(s) == [TOP, ca, cb]
    assert select_predicates(script('(= x y)')) == [TOP]
    lits = script('(= (str.++ z y x) (str.++ x "ab" z))')
    assert select_predicates(lits) == [TOP]
    assert select_predicates(lits, Mode.REGEX_LITERALS) == [TOP, ca, cb]
    assert select_predicates(lits, "regex+literals") == [TOP, ca, cb]


def test_predicate_selection_falls_back_on_blowup():
    hard = Concat(Star(Or(Char(A), Char(B))), Concat(Char(A), Loop(Or(Char(A), Char(B)), 8, 8)))
    # selection compiles without complementing: the guards are the predicates
    s = Script({"x": "String"}, [NotInRe(x, hard)])
    assert select_predicates(s, complement_cap=16) == [TOP, ca, CharPred.range(A, B)]
    f, ctx = abstract_script(s, complement_cap=16)
    assert ctx.warnings
    # a complement inside the regex blows up during selection: syntactic classes
    inner = Script({"x": "String"}, [InRe(x, Not(hard))])
    assert select_predicates(inner, complement_cap=16) == [TOP, ca, cb]


def test_string_expression_vectors():
    ctx = AbstractionCtx([TOP, ca, cb])
    assert [eval_term(t, {}) for t in abstract_sexp(Lit.of("aab"), ctx)] == [3, 2, 1]


@pytest.mark.needs_solver
def test_concat_adds_componentwise():
    s = script('(= z (str.++ x y))')
    f, _ = abstract_script(s, preds=[TOP, ca, cb])
    assert sat(with_extra(f, pin(vec("x") + vec("y") + vec("z"), [2, 1, 1, 3, 0, 2, 5, 1, 3])))
    assert not sat(with_extra(f, pin(vec("x") + vec("y") + vec("z"), [2, 1, 1, 3, 0, 2, 5, 1, 2])))


@pytest.mark.needs_solver
def test_replace_admits_prepended_result():
    ctx = AbstractionCtx([TOP, ca, cb])
    v = abstract_sexp(Replace(Lit.of("ab"), Lit.of(""), Lit.of("c")), ctx)
    f = LinFormula(conj(*ctx.side), ctx.builder.sorts)
    assert sat(with_extra(f, *(eq(t, k) for t, k in zip(v, [3, 1, 1]))))


@pytest.mark.needs_solver
def test_word_equation_forces_equal_vectors():
    f, _ = abstract_script(script('(= (str.++ z y x) (str.++ x x z))'), preds=[TOP, ca, cb])
    assert sat(with_extra(f, pin(vec("x") + vec("y"), [2, 1, 1, 2, 1, 1])))
    assert not sat(with_extra(f, pin(vec("x") + vec("y"), [2, 1, 1, 2, 2, 0])))


@pytest.mark.needs_solver
def test_contains_is_componentwise_bound():
    f, _ = abstract_script(script('(str.contains x "a")'), preds=[TOP, ca, cb])
    assert not sat(with_extra(f, pin(vec("x")[1:2], [0])))
    assert sat(with_extra(f, pin(vec("x"), [1, 1, 0])))


def test_negated_equation_is_weakened_with_warning():
    f, ctx = abstract_script(script('(not (= x y))'))
    assert ctx.warnings == ["negated StrEq weakened to true"]


@pytest.mark.needs_solver
def test_whole_scripts():
    f, _ = abstract_script(parse_script(example_path().read_text()))
    assert not sat(f)
    assert sat(abstract_script(script("true"))[0])
    assert not sat(abstract_script(script('(= x "ab")', "(= (str.len x) 3)"))[0])
    assert sat(abstract_script(script('(= x "ab")', "(= (str.len x) 2)"))[0])


@pytest.mark.needs_solver
def test_negated_length_comparison():
    f, _ = abstract_script(script('(= x "ab")', "(not (= (str.len x) 2))"))
    assert not sat(f)
    f, _ = abstract_script(script('(= x "ab")', "(not (< (str.len x) 2))"))
    assert sat(f)


def test_context_requires_top_first():
    with pytest.raises(ValueError):
        AbstractionCtx([ca, TOP])


def test_plus_membership_vector():
    s = Script({"x": "String"}, [InRe(x, Plus(Char(B)))])
    f, ctx = abstract_script(s)
    assert ctx.preds == [TOP, cb]
    assert set(vec("x", 2)) <= set(f.sorts)
