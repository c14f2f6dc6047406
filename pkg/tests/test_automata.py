import itertools

import pytest
from hypothesis import given, settings, strategies as st

from symparikh.charset import CharPred
from symparikh.errors import ComplementBlowup, EpsilonPresent
from symparikh.oracle import regex_matches
from symparikh.regex import (
    And, AnyChar, Char, Concat, Empty, Epsilon, Loop, Not, Opt, Or, Plus, Range, Star,
    compile_regex, literal,
)
from symparikh.sfa import (
    Sfa, accepts, complement, determinize, enumerate_words, is_empty, labels, product, trim, union,
)

from helpers import A, B, random_regex, random_sfa

a, b, c, d = (Char(ord(x)) for x in "abcd")
AB = [A, B]


def words(sfa, alphabet, n):
    return {"".join(map(chr, w)) for w in enumerate_words(sfa, alphabet, n)}


def ab_star():
    return compile_regex(Star(Concat(a, b)))


def test_ab_star():
    s = ab_star()
    assert s.num_states == 2
    for w in ["", "ab", "abab"]:
        assert accepts(s, w)
    for w in ["a", "ba", "aba"]:
        assert not accepts(s, w)
    assert words(s, AB, 4) == {"", "ab", "abab"}
    assert labels(s) == [CharPred.char(A), CharPred.char(B)]


def test_empty_and_epsilon():
    assert is_empty(compile_regex(Empty()))
    assert words(compile_regex(Empty()), AB, 3) == set()
    assert words(compile_regex(Epsilon()), AB, 3) == {""}
    assert labels(Sfa.empty()) == []


def test_duplicate_labels_collapse():
    s = Sfa.make(3, [(0, CharPred.char(A), 1), (1, CharPred.char(A), 2)], 0, {2})
    assert labels(s) == [CharPred.char(A)]


def test_intersection_with_complement_matches_brute_force():
    r = And(Star(Range(A, ord("c"))), Not(Star(b)))
    s = compile_regex(r)
    alphabet = [ord(x) for x in "abcd"]
    for n in range(5):
        for w in itertools.product(alphabet, repeat=n):
            expected = all(x <= ord("c") for x in w) and not all(x == B for x in w)
            assert accepts(s, w) == expected


def test_product_and_union():
    s = ab_star()
    u = Sfa.universal()
    alphabet = list(range(A, A + 4))
    assert words(product(s, u), alphabet, 5) == words(s, alphabet, 5)
    assert words(product(s, compile_regex(Star(a))), AB, 4) == {""}
    assert is_empty(product(s, Sfa.empty()))
    assert words(union(s, compile_regex(Plus(a))), AB, 3) == {"", "ab", "a", "aa", "aaa"}


def test_complement_examples():
    full = complement(Sfa.empty())
    assert accepts(full, "") and accepts(full, "xyz")
    ca = complement(compile_regex(Star(a)))
    assert not accepts(ca, "aa") and accepts(ca, "ab")


def test_complement_cap():
    blowup = compile_regex(Concat(Star(Or(a, b)), Concat(a, Loop(Or(a, b), 8, 8))))
    with pytest.raises(ComplementBlowup):
        complement(blowup, state_cap=16)


def test_epsilon_automaton_needs_removal():
    s = Sfa.make(2, [(1, CharPred.char(A), 1)], 0, {1}, epsilons=[(0, 1)])
    with pytest.raises(EpsilonPresent):
        enumerate_words(s, AB, 2)
    assert words(s.remove_epsilons(), AB, 2) == {"", "a", "aa"}


def test_trim_preserves_language():
    s = Sfa.make(4, [(0, CharPred.char(A), 1), (2, CharPred.char(B), 3), (1, CharPred.char(A), 0)],
                 0, {0, 3})
    t = trim(s)
    assert t.num_states <= 2
    assert words(t, AB, 5) == words(s, AB, 5)


def test_literal_and_loop():
    assert words(compile_regex(literal("ab")), AB, 4) == {"ab"}
    assert words(compile_regex(Loop(a, 1, 3)), AB, 5) == {"a", "aa", "aaa"}
    assert words(compile_regex(Opt(b)), AB, 2) == {"", "b"}
    assert len(words(compile_regex(AnyChar()), AB, 2)) == 2


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_compiled_regex_agrees_with_direct_matcher(seed):
    import random
    r = random_regex(random.Random(seed), depth=3)
    s = compile_regex(r)
    alphabet = [A, B, ord("c")]
    for n in range(4):
        for w in itertools.product(alphabet, repeat=n):
            assert accepts(s, w) == regex_matches(r, w), (r, w)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_determinize_and_double_complement(seed):
    import random
    s = random_sfa(random.Random(seed))
    alphabet = list(range(6))
    base = enumerate_words(s, alphabet, 4)
    assert enumerate_words(determinize(s), alphabet, 4) == base
    assert enumerate_words(complement(complement(s)), alphabet, 4) == base
