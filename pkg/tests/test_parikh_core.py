import itertools

import pytest

from symparikh.cfg import Cfg
from symparikh.charset import CharPred
from symparikh.formula import Var, le, total
from symparikh.oracle import derivation_counts_bruteforce
from symparikh.parikh_core import automaton_flow_formula, cfg_count_formula, letter_counts, rule_var
from symparikh.regex import Char, Concat, Star, compile_regex
from symparikh.sfa import Sfa

from helpers import A, B, pin, sat, sat_set_matches, with_extra

pytestmark = pytest.mark.needs_solver


def test_ab_star_label_counts_are_diagonal():
    flow = automaton_flow_formula(compile_regex(Star(Concat(Char(A), Char(B)))))
    names = [flow.label_count_vars[g] for g in sorted(flow.label_count_vars)]
    expected = {(k, k) for k in range(6)}
    assert sat_set_matches(flow.formula, names, expected, le(Var(names[0]), 5))


def test_accepting_state_without_transitions():
    f = automaton_flow_formula(Sfa.epsilon()).formula
    assert sat(f)
    assert not sat(automaton_flow_formula(Sfa.empty()).formula)


def test_disconnected_cycle_is_rejected():
    # a loop on an unreachable state must not contribute counts
    a = Sfa.make(2, [(1, CharPred.char(A), 1)], 0, {0})
    flow = automaton_flow_formula(a)
    (name,) = flow.label_count_vars.values()
    assert not sat(with_extra(flow.formula, pin([name], [1])))


def _rule_counts(g, bound):
    names = [rule_var(i) for i in range(len(g.rules))]
    return names, le(total(Var(n) for n in names), bound)


def test_anbn_rule_counts():
    g = Cfg.make("S", [("S", [A, "S", B]), ("S", [])])
    f = cfg_count_formula(g)
    for n_rec, n_eps in itertools.product(range(5), repeat=2):
        assert sat(with_extra(f, pin(["n0", "n1"], (n_rec, n_eps)))) == (n_eps == 1)
    assert derivation_counts_bruteforce(g, 3) == {(0, 1), (1, 1), (2, 1)}
    assert letter_counts(g, [2, 1]) == {A: 2, B: 2}


def test_epsilon_only_grammar():
    g = Cfg.make("S", [("S", [])])
    f = cfg_count_formula(g)
    assert [n for n in range(4) if sat(with_extra(f, pin(["n0"], [n])))] == [1]
    assert derivation_counts_bruteforce(g, 4) == {(1,)}


def test_unreachable_rule_never_used():
    g = Cfg.make("S", [("S", ["T"]), ("T", [A]), ("U", [B])])
    f = cfg_count_formula(g)
    assert not sat(with_extra(f, le(1, Var("n2"))))
    assert all(v[2] == 0 for v in derivation_counts_bruteforce(g, 4))
    names, bound = _rule_counts(g, 4)
    assert sat_set_matches(f, names, derivation_counts_bruteforce(g, 4), bound)


def test_self_loop_without_exit():
    g = Cfg.make("S", [("S", ["S"])])
    assert not sat(cfg_count_formula(g))
    assert derivation_counts_bruteforce(g, 4) == set()
