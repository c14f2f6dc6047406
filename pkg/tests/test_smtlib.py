import random

import pytest
from hypothesis import given, settings, strategies as st

from symparikh.errors import ParseError, UnsupportedFeature
from symparikh.pipeline import example_path
from symparikh.regex import AnyChar, Char, Concat, Empty, Loop, Not, Or, Plus, Range, Star
from symparikh.smtlib import parse_script, print_script
from symparikh.strlang import (
    BoolAnd, BoolNot, BoolOr, InRe, IntAdd, IntCmp, IntConst, IntScale, Len, Lit, SConcat,
    StrEq, SVar,
)

from helpers import A, B, random_script

HEADER = "(set-logic QF_SLIA)(declare-fun x () String)(declare-fun y () String)"


def one(body: str):
    (assertion,) = parse_script(HEADER + f"(assert {body})").assertions
    return assertion


def test_example_script():
    s = parse_script(example_path().read_text())
    assert s.logic == "QF_SLIA"
    assert s.string_vars() == ["x", "y", "z"]
    assert len(s.assertions) == 4
    x, y, z = SVar("x"), SVar("y"), SVar("z")
    assert s.assertions[0] == StrEq(SConcat((z, y, x)), SConcat((x, x, z)))


def test_empty_script():
    s = parse_script("(set-logic QF_SLIA)")
    assert s.assertions == [] and s.logic == "QF_SLIA"


def test_unsupported_functions():
    for body in ['(= (str.to_int x) 3)', '(= (str.at x 0) "a")']:
        with pytest.raises(UnsupportedFeature) as info:
            one(body)
        assert info.value.name in ("str.to_int", "str.at")
    with pytest.raises(UnsupportedFeature):
        parse_script("(declare-fun f (String) String)")
    with pytest.raises(UnsupportedFeature):
        parse_script("(push 1)")


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_script("(assert (= x")
    with pytest.raises(ParseError):
        parse_script(HEADER + "(assert (= x undeclared))")
    with pytest.raises(ParseError):
        parse_script(HEADER + "(assert (str.len x))")


def test_regex_constructors():
    r = one('(str.in_re x (re.union (str.to_re "a") (re.range "a" "c") re.allchar))').regex
    assert r == Or(Or(Char(A), Range(A, ord("c"))), AnyChar())
    assert one('(str.in_re x (re.range "ab" "c"))').regex == Empty()
    assert one('(str.in_re x ((_ re.loop 1 2) (str.to_re "b")))').regex == Loop(Char(B), 1, 2)
    assert one('(str.in_re x ((_ re.^ 2) (str.to_re "b")))').regex == Loop(Char(B), 2, 2)
    assert one("(str.in_re x re.all)").regex == Star(AnyChar())
    assert isinstance(one('(str.in_re x (re.comp (re.+ (str.to_re "a"))))').regex, Not)
    assert one('(str.in.re x (re.+ (str.to_re "ab")))').regex == Plus(Concat(Char(A), Char(B)))


def test_boolean_and_integer_structure():
    e = one('(=> (distinct x y) (and (<= (str.len x) (+ 1 (str.len y))) (not (= x "ab"))))')
    assert isinstance(e, BoolOr)
    assert e.args[0] == BoolNot(BoolNot(StrEq(SVar("x"), SVar("y"))))
    e = one("(< 0 (- (str.len x)) (* 2 (str.len y)))")
    assert isinstance(e, BoolAnd)
    assert e.args[0] == IntCmp("<", IntConst(0), IntScale(-1, Len(SVar("x"))))
    e = one("(= (+ (str.len x) (str.len y)) 3)")
    assert e == IntCmp("=", IntAdd((Len(SVar("x")), Len(SVar("y")))), IntConst(3))


def test_let_and_escapes():
    e = one('(let ((s (str.++ x "\\u{62}"))) (str.in_re s (re.* re.allchar)))')
    assert e == InRe(SConcat((SVar("x"), Lit((B,)))), Star(AnyChar()))
    assert one('(= x "a""b")').right == Lit.of('a"b')


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_print_parse_round_trip(seed):
    s = random_script(random.Random(seed))
    text = print_script(s)
    again = parse_script(text)
    assert print_script(again) == text
