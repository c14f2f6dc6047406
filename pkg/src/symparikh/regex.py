"""Regular-expression AST and its compilation to epsilon-free symbolic automata."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .charset import TOP, CharPred
from .sfa import DEFAULT_STATE_CAP, Sfa, complement, product, trim


class Regex:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Char(Regex):
    code: int


@dataclass(frozen=True, slots=True)
class Range(Regex):
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"range with lo > hi: {self.lo} > {self.hi}")


@dataclass(frozen=True, slots=True)
class Concat(Regex):
    left: Regex
    right: Regex


@dataclass(frozen=True, slots=True)
class Or(Regex):
    left: Regex
    right: Regex


@dataclass(frozen=True, slots=True)
class And(Regex):
    left: Regex
    right: Regex


@dataclass(frozen=True, slots=True)
class Not(Regex):
    arg: Regex


@dataclass(frozen=True, slots=True)
class Star(Regex):
    arg: Regex


@dataclass(frozen=True, slots=True)
class Plus(Regex):
    arg: Regex


@dataclass(frozen=True, slots=True)
class Opt(Regex):
    arg: Regex


@dataclass(frozen=True, slots=True)
class Loop(Regex):
    arg: Regex
    lo: int
    hi: Union[int, float] = math.inf

    def __post_init__(self):
        if self.lo < 0 or self.hi < self.lo:
            raise ValueError(f"bad loop bounds {self.lo}..{self.hi}")


@dataclass(frozen=True, slots=True)
class Empty(Regex):
    pass


@dataclass(frozen=True, slots=True)
class Epsilon(Regex):
    pass


@dataclass(frozen=True, slots=True)
class AnyChar(Regex):
    pass


def literal(word: str | list[int] | tuple[int, ...]) -> Regex:
    codes = [ord(c) for c in word] if isinstance(word, str) else list(word)
    if not codes:
        return Epsilon()
    r: Regex = Char(codes[0])
    for c in codes[1:]:
        r = Concat(r, Char(c))
    return r


def concat_all(parts: list[Regex]) -> Regex:
    if not parts:
        return Epsilon()
    r = parts[0]
    for p in parts[1:]:
        r = Concat(r, p)
    return r


def union_all(parts: list[Regex]) -> Regex:
    if not parts:
        return Empty()
    r = parts[0]
    for p in parts[1:]:
        r = Or(r, p)
    return r


def all_strings() -> Regex:
    return Star(AnyChar())


class _Builder:
    """Thompson-style construction with epsilon edges."""

    def __init__(self, state_cap: int):
        self.n = 0
        self.ts: list[tuple[int, CharPred, int]] = []
        self.eps: list[tuple[int, int]] = []
        self.state_cap = state_cap

    def state(self) -> int:
        self.n += 1
        return self.n - 1

    def guard(self, pred: CharPred) -> tuple[int, int]:
        s, e = self.state(), self.state()
        self.ts.append((s, pred, e))
        return s, e

    def embed(self, a: Sfa) -> tuple[int, int]:
        off = self.n
        self.n += a.num_states
        self.ts.extend((p + off, g, q + off) for p, g, q in a.transitions)
        end = self.state()
        self.eps.extend((q + off, end) for q in a.finals)
        return a.initial + off, end

    def build(self, r: Regex) -> tuple[int, int]:
        if isinstance(r, Char):
            return self.guard(CharPred.char(r.code))
        if isinstance(r, Range):
            return self.guard(CharPred.range(r.lo, r.hi))
        if isinstance(r, AnyChar):
            return self.guard(TOP)
        if isinstance(r, Empty):
            return self.state(), self.state()
        if isinstance(r, Epsilon):
            s = self.state()
            return s, s
        if isinstance(r, Concat):
            s1, e1 = self.build(r.left)
            s2, e2 = self.build(r.right)
            self.eps.append((e1, s2))
            return s1, e2
        if isinstance(r, Or):
            s, e = self.state(), self.state()
            for sub in (r.left, r.right):
                s1, e1 = self.build(sub)
                self.eps.extend(((s, s1), (e1, e)))
            return s, e
        if isinstance(r, Star):
            s, e = self.state(), self.state()
            s1, e1 = self.build(r.arg)
            self.eps.extend(((s, s1), (e1, e), (s, e), (e1, s1)))
            return s, e
        if isinstance(r, Plus):
            s1, e1 = self.build(r.arg)
            e = self.state()
            self.eps.extend(((e1, s1), (e1, e)))
            return s1, e
        if isinstance(r, Opt):
            s1, e1 = self.build(r.arg)
            s, e = self.state(), self.state()
            self.eps.extend(((s, s1), (e1, e), (s, e)))
            return s, e
        if isinstance(r, Loop):
            return self.build(_unroll(r))
        if isinstance(r, And):
            return self.embed(product(compile_regex(r.left, self.state_cap),
                                      compile_regex(r.right, self.state_cap)))
        if isinstance(r, Not):
            return self.embed(complement(compile_regex(r.arg, self.state_cap), self.state_cap))
        raise TypeError(f"not a regex: {r!r}")


def _unroll(r: Loop) -> Regex:
    parts = [r.arg] * r.lo
    if r.hi == math.inf:
        parts.append(Star(r.arg))
    elif r.hi > r.lo:
        # nested optionals: r (r (r)?)? ... keeps the automaton unambiguous-ish
        tail: Regex = Opt(r.arg)
        for _ in range(int(r.hi - r.lo) - 1):
            tail = Opt(Concat(r.arg, tail))
        parts.append(tail)
    return concat_all(parts)


def compile_regex(r: Regex, state_cap: int = DEFAULT_STATE_CAP) -> Sfa:
    """Epsilon-free, trimmed automaton accepting exactly L(r).

    Raises ComplementBlowup when a complement needs more than ``state_cap``
    deterministic states.
    """
    b = _Builder(state_cap)
    start, end = b.build(r)
    raw = Sfa.make(b.n, b.ts, start, [end], b.eps)
    return trim(raw.remove_epsilons())
