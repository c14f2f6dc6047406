"""Brute-force ground truth used by the tests.

Nothing here is clever on purpose: every function enumerates.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable, Mapping, Sequence

from .cfg import Cfg
from .charset import CharPred
from .regex import (
    And, AnyChar, Char, Concat, Empty, Epsilon, Loop, Not, Opt, Or, Plus, Range, Regex, Star,
)
from .sfa import Sfa, enumerate_words
from .strlang import (
    BoolAnd, BoolConst, BoolExpr, BoolNot, BoolOr, Contains, InRe, IntAdd, IntCmp, IntConst,
    IntExpr, IntScale, IntVar, Len, Lit, NotInRe, PrefixOf, Replace, SConcat, Script, StrEq,
    StrExpr, Substr, SuffixOf, SVar, walk,
)

Word = tuple[int, ...]


def parikh_vector(w: Sequence[int], preds: Sequence[CharPred]) -> tuple[int, ...]:
    return tuple(sum(1 for c in w if c in p) for p in preds)


def parikh_set_bruteforce(a: Sfa, preds: Sequence[CharPred], alphabet: Sequence[int],
                          max_len: int) -> set[tuple[int, ...]]:
    return {parikh_vector(w, preds) for w in enumerate_words(a, alphabet, max_len)}


def derivation_counts_bruteforce(g: Cfg, max_total: int) -> set[tuple[int, ...]]:
    """Rule-count vectors of complete derivations from the start symbol using
    at most ``max_total`` rule applications."""
    nts = g.nonterminals
    k = len(g.rules)
    trees: dict[str, set[tuple[int, ...]]] = {A: set() for A in nts}
    changed = True
    while changed:
        changed = False
        for idx, (lhs, rhs) in enumerate(g.rules):
            base = [0] * k
            base[idx] = 1
            partial = {tuple(base)}
            for s in rhs:
                if isinstance(s, int):
                    continue
                partial = {tuple(x + y for x, y in zip(p, t))
                           for p in partial for t in trees[s] if sum(p) + sum(t) <= max_total}
                if not partial:
                    break
            new = partial - trees[lhs]
            if new:
                trees[lhs] |= new
                changed = True
    return trees[g.start]


class _Overflow:
    def __repr__(self) -> str:
        return "OVERFLOW"


OVERFLOW = _Overflow()
SUBSET_CAP = 2**24


def equal_sum_subsets(vectors: Sequence[Sequence[int]], cap: int = SUBSET_CAP):
    """Two disjoint index sets with equal vector sums, or None, or OVERFLOW.

    The set containing the smaller index comes first.

    Subsets are enumerated prefix by prefix (all subsets of the first j
    vectors); the first repeated sum yields two subsets whose symmetric
    difference parts are disjoint and still balance.  A zero vector is only
    used as a last resort since it pairs trivially with the empty set.
    """
    vecs = [tuple(v) for v in vectors]
    if len(set(vecs)) != len(vecs):
        raise ValueError("vectors must be distinct")
    dim = len(vecs[0]) if vecs else 0
    zero = tuple([0] * dim)
    order = [i for i, v in enumerate(vecs) if v != zero]
    sums: dict[tuple[int, ...], frozenset[int]] = {zero: frozenset()}
    explored = 1
    for i in order:
        v = vecs[i]
        additions = []
        for s, members in sums.items():
            t = tuple(a + b for a, b in zip(s, v))
            new = members | {i}
            explored += 1
            if explored > cap:
                return OVERFLOW
            other = sums.get(t)
            if other is not None:
                return _ordered(new - other, other - new)
            additions.append((t, new))
        for t, new in additions:
            sums.setdefault(t, new)
    if len(order) < len(vecs):
        return frozenset(), frozenset({vecs.index(zero)})
    return None


def _ordered(a: frozenset[int], b: frozenset[int]) -> tuple[frozenset[int], frozenset[int]]:
    """The side holding the smallest index first."""
    return (a, b) if min(a, default=-1) < min(b, default=-1) else (b, a)


def lemma_bound(d: int, ell: int) -> int:
    return math.ceil(2 * d * math.log2(d * ell))


# -- direct regex matching ---------------------------------------------------


def _ends(r: Regex, w: Word, i: int, memo: dict) -> frozenset[int]:
    key = (id(r), i)
    hit = memo.get(key)
    if hit is not None:
        return hit
    n = len(w)
    if isinstance(r, Char):
        out = frozenset({i + 1}) if i < n and w[i] == r.code else frozenset()
    elif isinstance(r, Range):
        out = frozenset({i + 1}) if i < n and r.lo <= w[i] <= r.hi else frozenset()
    elif isinstance(r, AnyChar):
        out = frozenset({i + 1}) if i < n else frozenset()
    elif isinstance(r, Empty):
        out = frozenset()
    elif isinstance(r, Epsilon):
        out = frozenset({i})
    elif isinstance(r, Concat):
        out = frozenset(k for j in _ends(r.left, w, i, memo) for k in _ends(r.right, w, j, memo))
    elif isinstance(r, Or):
        out = _ends(r.left, w, i, memo) | _ends(r.right, w, i, memo)
    elif isinstance(r, And):
        out = _ends(r.left, w, i, memo) & _ends(r.right, w, i, memo)
    elif isinstance(r, Not):
        out = frozenset(range(i, n + 1)) - _ends(r.arg, w, i, memo)
    elif isinstance(r, Opt):
        out = _ends(r.arg, w, i, memo) | {i}
    elif isinstance(r, (Star, Plus)):
        reached = set() if isinstance(r, Plus) else {i}
        frontier = [i]
        seen = {i}
        while frontier:
            j = frontier.pop()
            for k in _ends(r.arg, w, j, memo):
                reached.add(k)
                if k not in seen:
                    seen.add(k)
                    frontier.append(k)
        out = frozenset(reached)
    elif isinstance(r, Loop):
        def step(js):
            return {k for j in js for k in _ends(r.arg, w, j, memo)}
        current = {i}
        for _ in range(r.lo):
            current = step(current)
        reached = set(current)
        budget = r.hi - r.lo
        while budget > 0 and current:
            # positions are first reached with the fewest iterations
            current = step(current) - reached
            reached |= current
            budget -= 1
        out = frozenset(reached)
    else:
        raise TypeError(r)
    memo[key] = out
    return out


def regex_matches(r: Regex, w: Sequence[int] | str) -> bool:
    word = tuple(ord(c) for c in w) if isinstance(w, str) else tuple(w)
    return len(word) in _ends(r, word, 0, {})


# -- script semantics --------------------------------------------------------


def _find(hay: Word, needle: Word) -> int:
    n = len(needle)
    for i in range(len(hay) - n + 1):
        if hay[i:i + n] == needle:
            return i
    return -1


def eval_str(e: StrExpr, env: Mapping[str, object]) -> Word:
    if isinstance(e, Lit):
        return e.codes
    if isinstance(e, SVar):
        return env[e.name]
    if isinstance(e, SConcat):
        return tuple(itertools.chain.from_iterable(eval_str(a, env) for a in e.args))
    if isinstance(e, Replace):
        s, p, r = eval_str(e.subject, env), eval_str(e.pattern, env), eval_str(e.replacement, env)
        k = _find(s, p)
        return s if k < 0 else s[:k] + r + s[k + len(p):]
    if isinstance(e, Substr):
        s = eval_str(e.subject, env)
        i, n = eval_int(e.start, env), eval_int(e.length, env)
        if i < 0 or i >= len(s) or n <= 0:
            return ()
        return s[i:i + n]
    raise TypeError(e)


def eval_int(e: IntExpr, env: Mapping[str, object]) -> int:
    if isinstance(e, IntConst):
        return e.value
    if isinstance(e, IntVar):
        return env[e.name]
    if isinstance(e, Len):
        return len(eval_str(e.arg, env))
    if isinstance(e, IntAdd):
        return sum(eval_int(a, env) for a in e.args)
    if isinstance(e, IntScale):
        return e.coef * eval_int(e.arg, env)
    raise TypeError(e)


_OPS = {"=": lambda a, b: a == b, "<=": lambda a, b: a <= b, "<": lambda a, b: a < b,
        ">=": lambda a, b: a >= b, ">": lambda a, b: a > b}


def eval_bool(e: BoolExpr, env: Mapping[str, object]) -> bool:
    if isinstance(e, BoolConst):
        return e.value
    if isinstance(e, BoolAnd):
        return all(eval_bool(a, env) for a in e.args)
    if isinstance(e, BoolOr):
        return any(eval_bool(a, env) for a in e.args)
    if isinstance(e, BoolNot):
        return not eval_bool(e.arg, env)
    if isinstance(e, InRe):
        return regex_matches(e.regex, eval_str(e.arg, env))
    if isinstance(e, NotInRe):
        return not regex_matches(e.regex, eval_str(e.arg, env))
    if isinstance(e, StrEq):
        return eval_str(e.left, env) == eval_str(e.right, env)
    if isinstance(e, Contains):
        return _find(eval_str(e.haystack, env), eval_str(e.needle, env)) >= 0
    if isinstance(e, PrefixOf):
        p, w = eval_str(e.prefix, env), eval_str(e.whole, env)
        return w[:len(p)] == p
    if isinstance(e, SuffixOf):
        s, w = eval_str(e.suffix, env), eval_str(e.whole, env)
        return len(s) <= len(w) and w[len(w) - len(s):] == s
    if isinstance(e, IntCmp):
        return _OPS[e.op](eval_int(e.left, env), eval_int(e.right, env))
    raise TypeError(e)


def words_upto(alphabet: Sequence[int], max_len: int) -> list[Word]:
    return [w for n in range(max_len + 1) for w in itertools.product(alphabet, repeat=n)]


def _vars_of(e) -> set[str]:
    return {n.name for n in walk(e) if isinstance(n, (SVar, IntVar))}


def _conjuncts(e: BoolExpr) -> Iterable[BoolExpr]:
    if isinstance(e, BoolAnd):
        for a in e.args:
            yield from _conjuncts(a)
    else:
        yield e


def find_model(script: Script, alphabet: Sequence[int], max_len: int,
               int_range: Sequence[int] = range(-1, 6)) -> dict | None:
    """A satisfying assignment with strings of length at most ``max_len``, or None.

    Backtracking over variables; each conjunct is checked as soon as all of
    its variables are assigned.
    """
    conjuncts = [c for a in script.assertions for c in _conjuncts(a)]
    order = list(script.declarations)
    position = {v: k for k, v in enumerate(order)}
    ready: list[list[BoolExpr]] = [[] for _ in range(len(order) + 1)]
    for c in conjuncts:
        vs = _vars_of(c)
        ready[max((position[v] + 1 for v in vs), default=0)].append(c)
    if not all(eval_bool(c, {}) for c in ready[0]):
        return None
    domains = [words_upto(alphabet, max_len) if script.declarations[v] == "String"
               else list(int_range) for v in order]
    env: dict[str, object] = {}

    def search(k: int) -> bool:
        if k == len(order):
            return True
        for value in domains[k]:
            env[order[k]] = value
            if all(eval_bool(c, env) for c in ready[k + 1]) and search(k + 1):
                return True
        del env[order[k]]
        return False

    return dict(env) if search(0) else None
