from symparikh.cfg import Cfg
from symparikh.charset import CharPred
from symparikh.oracle import (
    derivation_counts_bruteforce, equal_sum_subsets, eval_str, find_model, parikh_set_bruteforce,
    regex_matches,
)
from symparikh.regex import And, Char, Concat, Loop, Not, Star, compile_regex
from symparikh.sfa import Sfa
from symparikh.smtlib import parse_script
from symparikh.strlang import IntConst, Lit, Replace, Substr

from helpers import A, B

ca, cb = CharPred.char(A), CharPred.char(B)


def test_parikh_set_examples():
    ab = compile_regex(Star(Concat(Char(A), Char(B))))
    assert parikh_set_bruteforce(ab, [ca, cb], [A, B], 4) == {(0, 0), (1, 1), (2, 2)}
    assert parikh_set_bruteforce(Sfa.empty(), [ca], [A, B], 4) == set()
    assert parikh_set_bruteforce(Sfa.universal(), [CharPred.top()], [A], 2) == {(0,), (1,), (2,)}


def test_derivation_count_examples():
    assert derivation_counts_bruteforce(Cfg.make("S", [("S", [])]), 4) == {(1,)}
    g = Cfg.make("S", [("S", [A, "S", B]), ("S", [])])
    assert derivation_counts_bruteforce(g, 3) == {(0, 1), (1, 1), (2, 1)}
    g = Cfg.make("S", [("S", [A]), ("U", [B])])
    assert derivation_counts_bruteforce(g, 4) == {(1, 0)}


def check_pair(vecs, pair):
    left, right = pair
    assert not left & right and left | right
    d = len(vecs[0])
    assert [sum(vecs[i][j] for i in left) for j in range(d)] == \
        [sum(vecs[i][j] for i in right) for j in range(d)]


def test_equal_sum_examples():
    assert equal_sum_subsets([(1, 0), (0, 1), (1, 1)]) == ({0, 1}, {2})
    assert equal_sum_subsets([(1, 0)]) is None
    five = [(1, 0, 0), (1, 1, 1), (1, 1, 0), (1, 0, 1), (0, 0, 0)]
    pair = equal_sum_subsets(five)
    check_pair(five, pair)
    assert 4 not in pair[0] | pair[1]
    assert equal_sum_subsets([(0, 0), (1, 0)]) == (frozenset(), frozenset({0}))


def test_regex_matcher():
    assert regex_matches(Loop(Char(A), 2, 3), "aaa")
    assert not regex_matches(Loop(Char(A), 2, 3), "aaaa")
    assert regex_matches(Not(Star(Char(A))), "ab")
    assert not regex_matches(And(Star(Char(A)), Not(Char(A))), "a")


def test_string_semantics():
    assert eval_str(Replace(Lit.of("abab"), Lit.of("b"), Lit.of("c")), {}) == Lit.of("acab").codes
    assert eval_str(Replace(Lit.of("ab"), Lit.of(""), Lit.of("c")), {}) == Lit.of("cab").codes
    assert eval_str(Substr(Lit.of("abc"), IntConst(1), IntConst(5)), {}) == Lit.of("bc").codes
    assert eval_str(Substr(Lit.of("abc"), IntConst(3), IntConst(1)), {}) == ()


def test_find_model():
    s = parse_script('(declare-fun x () String)(declare-fun n () Int)'
                     '(assert (str.in_re x (re.+ (str.to_re "ab"))))(assert (= (str.len x) n))'
                     '(assert (> n 2))')
    model = find_model(s, [A, B], 4)
    assert model == {"x": Lit.of("abab").codes, "n": 4}
    s = parse_script('(declare-fun x () String)(assert (= (str.++ x "a") (str.++ "b" x)))')
    assert find_model(s, [A, B], 4) is None
