"""Parametric nondeterministic pushdown automata and grammar conversions.

A transition either reads an input letter (bound to ``curr``) or is an
epsilon move.  It inspects the stack in one of three ways: not at all
(``top=None``), popping a stack symbol from Gamma (``top=<symbol>``), or
popping a data value (``top=DATA``), in which case the guard may mention
``top`` and nothing may be pushed.  Pushed words mix Gamma symbols with
variables (parameters, locals and, for reading moves, ``curr``).

A word is accepted when some run reaches a final state; the stack need not
be empty.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import FuelExhausted, PushTooLong
from .formula import TRUE, Formula, Var, _subst_formula, conj, eq, eval_formula, free_vars
from .grammar import ParamGrammar, Production

CURR = "curr"
TOP = "top"
DATA = "<data>"
BOTTOM = "⊥"
DEFAULT_FUEL = 1_000_000


@dataclass(frozen=True)
class PdaTransition:
    src: int
    dst: int
    reads: bool
    top: str | None = None
    guard: Formula = TRUE
    push: tuple[str, ...] = ()
    locals: tuple[str, ...] = ()

    @property
    def pops(self) -> bool:
        return self.top is not None

    @property
    def pops_data(self) -> bool:
        return self.top == DATA


@dataclass(frozen=True)
class Npda:
    num_states: int
    gamma: tuple[str, ...]
    params: tuple[str, ...]
    transitions: tuple[PdaTransition, ...]
    initial: int
    finals: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "finals", frozenset(self.finals))
        gamma = set(self.gamma)
        if DATA in gamma or gamma & set(self.params) or gamma & {CURR, TOP}:
            raise ValueError("stack alphabet clashes with reserved or parameter names")
        if not 0 <= self.initial < self.num_states or any(
                not 0 <= f < self.num_states for f in self.finals):
            raise ValueError("state out of range")
        for t in self.transitions:
            if not (0 <= t.src < self.num_states and 0 <= t.dst < self.num_states):
                raise ValueError(f"transition {t} leaves the state range")
            if t.top is not None and t.top != DATA and t.top not in gamma:
                raise ValueError(f"unknown stack symbol {t.top!r}")
            if t.pops_data and t.push:
                raise ValueError("a move popping a data value cannot push")
            scope = set(self.params) | set(t.locals)
            if t.reads:
                scope.add(CURR)
            if t.pops_data:
                scope.add(TOP)
            extra = free_vars(t.guard) - scope
            if extra:
                raise ValueError(f"guard mentions {sorted(extra)} outside its scope")
            for s in t.push:
                if s not in gamma and s not in scope - {TOP}:
                    raise ValueError(f"pushed symbol {s!r} is neither in Gamma nor a variable")

    @property
    def max_push(self) -> int:
        return max((len(t.push) for t in self.transitions), default=0)


# -- semantics ---------------------------------------------------------------


def _moves(p: Npda, t: PdaTransition, stack: tuple, letter: int | None,
           params: Mapping[str, int], domain: Sequence[int]):
    """Stacks reachable by firing ``t`` on ``stack`` (``letter`` when reading)."""
    env = dict(params)
    if t.reads:
        env[CURR] = letter
    rest = stack
    if t.top is not None:
        if not stack:
            return
        head = stack[0]
        if t.pops_data:
            if not isinstance(head, int):
                return
            env[TOP] = head
        elif head != t.top:
            return
        rest = stack[1:]
    gamma = p.gamma
    for values in itertools.product(domain, repeat=len(t.locals)):
        env.update(zip(t.locals, values))
        if eval_formula(t.guard, env):
            pushed = tuple(s if s in gamma else env[s] for s in t.push)
            yield pushed + rest


def pda_run(p: Npda, params: Mapping[str, int], w: Sequence[int] | str,
            domain: Sequence[int], fuel: int = DEFAULT_FUEL) -> bool:
    """Breadth-first search for an accepting run; local values range over ``domain``.

    ``fuel`` bounds the number of distinct configurations visited; running out
    raises :class:`FuelExhausted` rather than answering ``False``.
    """
    word = [ord(c) for c in w] if isinstance(w, str) else list(w)
    by_src: list[list[PdaTransition]] = [[] for _ in range(p.num_states)]
    for t in p.transitions:
        by_src[t.src].append(t)
    start = (p.initial, 0, ())
    seen = {start}
    queue = deque([start])
    while queue:
        q, pos, stack = queue.popleft()
        if pos == len(word) and q in p.finals:
            return True
        for t in by_src[q]:
            if t.reads and pos == len(word):
                continue
            letter = word[pos] if t.reads else None
            for new_stack in _moves(p, t, stack, letter, params, domain):
                cfg = (t.dst, pos + 1 if t.reads else pos, new_stack)
                if cfg not in seen:
                    if len(seen) >= fuel:
                        raise FuelExhausted(f"explored {fuel} configurations")
                    seen.add(cfg)
                    queue.append(cfg)
    return False


# -- grammar -> pushdown -----------------------------------------------------


def grammar_to_pda(g: ParamGrammar) -> Npda:
    """Three-state automaton simulating leftmost derivations of ``g``.

    State 0 pushes ``S ⊥``; state 1 expands a nonterminal on top of the stack
    by an instantiated production or matches a data value against the input;
    popping ``⊥`` moves to the accepting state 2.
    """
    if BOTTOM in g.nonterminals:
        raise ValueError(f"nonterminal name {BOTTOM!r} is reserved")
    ts = [
        PdaTransition(0, 1, False, None, TRUE, (g.start, BOTTOM)),
        PdaTransition(1, 2, False, BOTTOM),
        PdaTransition(1, 1, True, DATA, eq(Var(TOP), Var(CURR))),
    ]
    for prod in g.productions:
        ts.append(PdaTransition(1, 1, False, prod.lhs, prod.guard, prod.rhs, prod.locals))
    return Npda(3, tuple(g.nonterminals) + (BOTTOM,), g.params, tuple(ts), 0, frozenset({2}))


# -- pushdown -> grammar -----------------------------------------------------


def normalize_pda(p: Npda) -> Npda:
    """Equivalent automaton with one final state, reached only with an empty stack,
    where every move either pops or pushes (possibly nothing) but not both."""
    n = p.num_states
    ts: list[PdaTransition] = []
    split: dict[tuple[int, str], int] = {}
    for t in p.transitions:
        if t.top is None or t.pops_data or not t.push:
            ts.append(t)
            continue
        key = (t.src, t.top)
        if key not in split:
            split[key] = n
            ts.append(PdaTransition(t.src, n, False, t.top))
            n += 1
        ts.append(PdaTransition(split[key], t.dst, t.reads, None, t.guard, t.push, t.locals))
    drain = n
    n += 1
    ts.extend(PdaTransition(f, drain, False) for f in sorted(p.finals))
    ts.extend(PdaTransition(drain, drain, False, s) for s in p.gamma)
    ts.append(PdaTransition(drain, drain, False, DATA))
    return Npda(n, p.gamma, p.params, tuple(ts), p.initial, frozenset({drain}))


def nt_name(q: int, r: int) -> str:
    return f"A[{q},{r}]"


def pda_to_grammar(p: Npda, max_push: int) -> ParamGrammar:
    """Grammar with nonterminals ``A[q,r]`` for stack-neutral runs from q to r.

    A move pushing ``s1..sk`` is compounded with the k moves that later pop
    those symbols into a single production, with fresh copies of each move's
    locals.  Size is exponential in ``max_push``.
    """
    for t in p.transitions:
        if len(t.push) > max_push:
            raise PushTooLong(f"transition {t.src}->{t.dst} pushes {len(t.push)} > {max_push}")
    norm = normalize_pda(p)
    (final,) = norm.finals
    gamma = set(norm.gamma)
    states = range(norm.num_states)
    pushers = [t for t in norm.transitions if t.top is None]
    pop_gamma: dict[str, list[PdaTransition]] = {}
    pop_data: list[PdaTransition] = []
    for t in norm.transitions:
        if t.pops_data:
            pop_data.append(t)
        elif t.top is not None:
            pop_gamma.setdefault(t.top, []).append(t)

    start = nt_name(norm.initial, final)
    prods: list[Production] = []
    for q in states:
        prods.append(Production(nt_name(q, q), ()))
    for q, r, s in itertools.product(states, repeat=3):
        prods.append(Production(nt_name(q, s), (nt_name(q, r), nt_name(r, s))))

    for t0 in pushers:
        rename0 = {v: Var(f"l0_{v}") for v in t0.locals}
        locals0 = [f"l0_{v}" for v in t0.locals]
        head: list[str] = []
        if t0.reads:
            rename0[CURR] = Var("y0")
            head.append("y0")
            locals0.insert(0, "y0")
        guard0 = _subst_formula(t0.guard, rename0)
        options = []
        for s in t0.push:
            options.append(pop_gamma.get(s, []) if s in gamma else pop_data)
        for pops in itertools.product(*options):
            rhs = list(head)
            locs = list(locals0)
            guards = [guard0]
            for i, (s, ti) in enumerate(zip(t0.push, pops), 1):
                rhs.append(nt_name(t0.dst if i == 1 else pops[i - 2].dst, ti.src))
                ren = {v: Var(f"l{i}_{v}") for v in ti.locals}
                locs.extend(f"l{i}_{v}" for v in ti.locals)
                if ti.reads:
                    ren[CURR] = Var(f"y{i}")
                    rhs.append(f"y{i}")
                    locs.append(f"y{i}")
                if ti.pops_data:
                    ren[TOP] = rename0.get(s, Var(s))
                guards.append(_subst_formula(ti.guard, ren))
            end = pops[-1].dst if pops else t0.dst
            prods.append(Production(nt_name(t0.src, end), tuple(rhs), conj(*guards), tuple(locs)))

    nts = [start] + sorted({pr.lhs for pr in prods} | {s for pr in prods for s in pr.rhs
                                                        if s.startswith("A[")} - {start})
    return ParamGrammar(p.params, tuple(nts), start, tuple(prods))

