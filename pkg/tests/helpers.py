"""Seeded generators and small solver shortcuts shared by the tests."""

from __future__ import annotations

import itertools
import random

from symparikh.cfg import Cfg
from symparikh.charset import CharPred
from symparikh.formula import LinFormula, Var, conj_all, disj_all, eq, ne
from symparikh.regex import (
    And, AnyChar, Char, Concat, Epsilon, Loop, Not, Opt, Or, Plus, Range, Regex, Star,
)
from symparikh.sfa import Sfa
from symparikh.solver import is_sat
from symparikh.strlang import (
    BoolAnd, BoolNot, BoolOr, Contains, InRe, IntCmp, IntConst, Len, Lit, NotInRe, PrefixOf,
    Replace, SConcat, Script, StrEq, Substr, SuffixOf, SVar,
)
from symparikh.symbolic import EncodeOpts

A, B, C = ord("a"), ord("b"), ord("c")

FLAG_COMBOS = [EncodeOpts(use_buckets=bk, use_symmetry=sy)
               for bk, sy in itertools.product((True, False), repeat=2)]


def sat(f: LinFormula) -> bool:
    return is_sat(f)


def with_extra(f: LinFormula, *extra) -> LinFormula:
    return LinFormula(conj_all([f.body, *extra]), f.sorts)


def pin(names, values):
    return conj_all(eq(Var(n), v) for n, v in zip(names, values))


def differs(names, values):
    return disj_all(ne(Var(n), v) for n, v in zip(names, values))


def sat_set_matches(f: LinFormula, names, expected, bound=None, chunk: int = 8) -> bool:
    """Whether the solutions of ``f`` projected on ``names`` (restricted by the
    formula ``bound`` when given) are exactly ``expected``.

    One solver call shows nothing lies outside the set; then each call
    realizes ``chunk`` members at once with one renamed copy of ``f`` each."""
    extra = [bound] if bound is not None else []
    outside = with_extra(f, *extra, *(differs(names, v) for v in sorted(expected)))
    if sat(outside):
        return False
    members = sorted(expected)
    for lo in range(0, len(members), chunk):
        copies = [with_extra(f.rename(f"m{k}."), pin([f"m{k}." + n for n in names], v))
                  for k, v in enumerate(members[lo:lo + chunk])]
        if not sat(copies[0].conj(*copies[1:])):
            return False
    return True


# -- automata ----------------------------------------------------------------


def random_interval(rng: random.Random, lo: int = 0, hi: int = 9) -> CharPred:
    a, b = sorted(rng.randint(lo, hi) for _ in range(2))
    return CharPred.range(a, b)


def random_guard(rng: random.Random) -> CharPred:
    g = random_interval(rng)
    if rng.random() < 0.25:
        g = g | random_interval(rng)
    return g


def random_sfa(rng: random.Random, max_states: int = 4, max_trans: int = 6) -> Sfa:
    n = rng.randint(1, max_states)
    ts = [(rng.randrange(n), random_guard(rng), rng.randrange(n))
          for _ in range(rng.randint(0, max_trans))]
    finals = {q for q in range(n) if rng.random() < 0.5} or {rng.randrange(n)}
    return Sfa.make(n, ts, 0, finals)


def random_preds(rng: random.Random, max_len: int = 3) -> list[CharPred]:
    return [CharPred.top()] + [random_interval(rng) for _ in range(rng.randint(0, max_len - 1))]


# -- grammars ----------------------------------------------------------------


def random_cfg(rng: random.Random, max_nts: int = 3, max_rules: int = 5) -> Cfg:
    nts = ["S", "T", "U"][:rng.randint(1, max_nts)]
    rules = []
    for _ in range(rng.randint(1, max_rules)):
        lhs = "S" if not rules else rng.choice(nts)
        rhs = [rng.choice(nts) if rng.random() < 0.4 else rng.choice((A, B))
               for _ in range(rng.randint(0, 3))]
        rules.append((lhs, rhs))
    return Cfg.make("S", rules)


# -- string scripts ----------------------------------------------------------

_LETTERS = (A, B, C)


def random_regex(rng: random.Random, depth: int = 2) -> Regex:
    if depth == 0 or rng.random() < 0.3:
        roll = rng.random()
        if roll < 0.6:
            return Char(rng.choice(_LETTERS))
        if roll < 0.8:
            return Range(A, rng.choice((B, C)))
        if roll < 0.9:
            return AnyChar()
        return Epsilon()
    sub = lambda: random_regex(rng, depth - 1)  # noqa: E731
    kind = rng.choice(("cat", "cat", "or", "star", "plus", "opt", "loop", "and", "not"))
    if kind == "cat":
        return Concat(sub(), sub())
    if kind == "or":
        return Or(sub(), sub())
    if kind == "star":
        return Star(sub())
    if kind == "plus":
        return Plus(sub())
    if kind == "opt":
        return Opt(sub())
    if kind == "loop":
        lo = rng.randint(0, 2)
        return Loop(sub(), lo, lo + rng.randint(0, 2))
    if kind == "and":
        return And(sub(), sub())
    return Not(sub())


def random_lit(rng: random.Random, max_len: int = 2) -> Lit:
    return Lit(tuple(rng.choice(_LETTERS) for _ in range(rng.randint(0, max_len))))


def random_sexpr(rng: random.Random, names, depth: int = 1):
    roll = rng.random()
    if depth == 0 or roll < 0.45:
        return SVar(rng.choice(names))
    if roll < 0.55:
        return random_lit(rng)
    if roll < 0.8:
        return SConcat(tuple(random_sexpr(rng, names, depth - 1)
                             for _ in range(rng.randint(2, 3))))
    if roll < 0.9:
        return Replace(random_sexpr(rng, names, depth - 1), random_lit(rng, 1),
                       random_lit(rng))
    return Substr(random_sexpr(rng, names, depth - 1), IntConst(rng.randint(0, 2)),
                  IntConst(rng.randint(0, 3)))


def random_atom(rng: random.Random, names):
    e = lambda: random_sexpr(rng, names)  # noqa: E731
    kind = rng.choice(("in", "in", "in", "notin", "eq", "eq", "contains", "prefix", "suffix",
                       "len", "lencmp"))
    if kind == "in":
        return InRe(e(), random_regex(rng))
    if kind == "notin":
        return NotInRe(e(), random_regex(rng))
    if kind == "eq":
        return StrEq(e(), e())
    if kind == "contains":
        return Contains(e(), e())
    if kind == "prefix":
        return PrefixOf(e(), e())
    if kind == "suffix":
        return SuffixOf(e(), e())
    op = rng.choice(("=", "<=", "<", ">=", ">"))
    if kind == "len":
        return IntCmp(op, Len(e()), IntConst(rng.randint(0, 4)))
    return IntCmp(op, Len(e()), Len(e()))


def random_script(rng: random.Random, max_vars: int = 3, max_atoms: int = 4) -> Script:
    names = ["x", "y", "z"][:rng.randint(1, max_vars)]
    atoms = [random_atom(rng, names) for _ in range(rng.randint(1, max_atoms))]
    atoms = [BoolNot(a) if rng.random() < 0.15 else a for a in atoms]
    if len(atoms) >= 2 and rng.random() < 0.25:
        atoms = [BoolOr((atoms[0], atoms[1]))] + atoms[2:]
    body = atoms if rng.random() < 0.7 else [BoolAnd(tuple(atoms))]
    return Script({n: "String" for n in names}, body, "QF_SLIA")
