"""Symbolic finite automata over :class:`CharPred` guards."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .charset import TOP, CharPred, minterms, pred_inter, pred_union
from .errors import ComplementBlowup, EpsilonPresent

Transition = tuple[int, CharPred, int]

DEFAULT_STATE_CAP = 10_000


@dataclass(frozen=True)
class Sfa:
    """States are ``0 .. num_states - 1``.

    ``epsilons`` holds silent moves and is only ever non-empty on the
    intermediate automata built during regex compilation; every public
    operation except :meth:`remove_epsilons` requires it to be empty.
    """

    num_states: int
    transitions: tuple[Transition, ...]
    initial: int
    finals: frozenset[int]
    epsilons: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        n = self.num_states
        if not 0 <= self.initial < n:
            raise ValueError("initial state out of range")
        if any(not 0 <= q < n for q in self.finals):
            raise ValueError("final state out of range")
        for src, guard, dst in self.transitions:
            if not (0 <= src < n and 0 <= dst < n):
                raise ValueError("transition endpoint out of range")
            if not guard:
                raise ValueError("transition with empty guard")

    @classmethod
    def make(cls, num_states: int, transitions: Iterable[Transition], initial: int,
             finals: Iterable[int], epsilons: Iterable[tuple[int, int]] = ()) -> Sfa:
        """Construct, dropping empty-guard transitions and duplicates."""
        seen = set()
        ts = []
        for t in transitions:
            if t[1] and t not in seen:
                seen.add(t)
                ts.append(t)
        eps = tuple(sorted(set((p, q) for p, q in epsilons if p != q)))
        return cls(num_states, tuple(ts), initial, frozenset(finals), eps)

    @classmethod
    def empty(cls) -> Sfa:
        return cls(1, (), 0, frozenset())

    @classmethod
    def epsilon(cls) -> Sfa:
        return cls(1, (), 0, frozenset({0}))

    @classmethod
    def universal(cls) -> Sfa:
        return cls(1, ((0, TOP, 0),), 0, frozenset({0}))

    @property
    def states(self) -> range:
        return range(self.num_states)

    def _require_eps_free(self) -> None:
        if self.epsilons:
            raise EpsilonPresent("automaton has epsilon transitions")

    def outgoing(self) -> list[list[tuple[CharPred, int]]]:
        out: list[list[tuple[CharPred, int]]] = [[] for _ in self.states]
        for src, g, dst in self.transitions:
            out[src].append((g, dst))
        return out

    def remove_epsilons(self) -> Sfa:
        if not self.epsilons:
            return self
        succ: list[list[int]] = [[] for _ in self.states]
        for p, q in self.epsilons:
            succ[p].append(q)
        out = self.outgoing()
        ts = []
        finals = set()
        for p in self.states:
            closure = {p}
            stack = [p]
            while stack:
                for r in succ[stack.pop()]:
                    if r not in closure:
                        closure.add(r)
                        stack.append(r)
            for q in closure:
                ts.extend((p, g, r) for g, r in out[q])
                if q in self.finals:
                    finals.add(p)
        return trim(Sfa.make(self.num_states, ts, self.initial, finals))


def trim(a: Sfa) -> Sfa:
    """Drop useless states and merge parallel transitions by guard union."""
    a._require_eps_free()
    fwd: list[set[int]] = [set() for _ in a.states]
    bwd: list[set[int]] = [set() for _ in a.states]
    for p, _, q in a.transitions:
        fwd[p].add(q)
        bwd[q].add(p)

    def reach(seeds, edges):
        seen = set(seeds)
        stack = list(seeds)
        while stack:
            for r in edges[stack.pop()]:
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
        return seen

    useful = reach([a.initial], fwd) & reach(a.finals, bwd)
    if a.initial not in useful:
        return Sfa.empty()
    order = [a.initial] + sorted(useful - {a.initial})
    index = {q: i for i, q in enumerate(order)}
    merged: dict[tuple[int, int], CharPred] = {}
    for p, g, q in a.transitions:
        if p in index and q in index:
            key = (index[p], index[q])
            merged[key] = pred_union(merged[key], g) if key in merged else g
    ts = [(p, g, q) for (p, q), g in sorted(merged.items(), key=lambda kv: kv[0])]
    finals = {index[q] for q in a.finals if q in index}
    return _merge_duplicates(len(order), ts, finals)


def _merge_duplicates(n: int, ts: list[Transition], finals: set[int]) -> Sfa:
    # States with equal finality and equal outgoing (guard, target) sets accept
    # the same language; merge them until nothing changes.
    while True:
        outs: dict[int, set] = {q: set() for q in range(n)}
        for p, g, q in ts:
            outs[p].add((g, q))
        rep: dict[tuple, int] = {}
        remap = {}
        for q in range(n):
            key = (q in finals, frozenset(outs[q]))
            if q != 0 and key in rep:
                remap[q] = rep[key]
            else:
                rep.setdefault(key, q)
                remap[q] = q
        if all(remap[q] == q for q in range(n)):
            return Sfa.make(n, ts, 0, finals)
        keep = sorted(set(remap.values()))
        renum = {q: i for i, q in enumerate(keep)}
        merged: dict[tuple[int, int], CharPred] = {}
        for p, g, q in ts:
            if remap[p] != p:
                continue
            key = (renum[p], renum[remap[q]])
            merged[key] = pred_union(merged[key], g) if key in merged else g
        ts = [(p, g, q) for (p, q), g in sorted(merged.items(), key=lambda kv: kv[0])]
        finals = {renum[q] for q in finals if remap[q] == q}
        n = len(keep)


def product(a: Sfa, b: Sfa) -> Sfa:
    a._require_eps_free()
    b._require_eps_free()
    out_a, out_b = a.outgoing(), b.outgoing()
    start = (a.initial, b.initial)
    index = {start: 0}
    queue = deque([start])
    ts = []
    while queue:
        p, q = queue.popleft()
        src = index[(p, q)]
        for g1, p2 in out_a[p]:
            for g2, q2 in out_b[q]:
                g = pred_inter(g1, g2)
                if not g:
                    continue
                if (p2, q2) not in index:
                    index[(p2, q2)] = len(index)
                    queue.append((p2, q2))
                ts.append((src, g, index[(p2, q2)]))
    finals = [i for (p, q), i in index.items() if p in a.finals and q in b.finals]
    return trim(Sfa.make(len(index), ts, 0, finals))


def union(a: Sfa, b: Sfa) -> Sfa:
    a._require_eps_free()
    b._require_eps_free()
    off = a.num_states
    start = a.num_states + b.num_states
    ts = list(a.transitions) + [(p + off, g, q + off) for p, g, q in b.transitions]
    eps = [(start, a.initial), (start, b.initial + off)]
    finals = set(a.finals) | {q + off for q in b.finals}
    return Sfa.make(start + 1, ts, start, finals, eps).remove_epsilons()


def determinize(a: Sfa, state_cap: int = DEFAULT_STATE_CAP) -> Sfa:
    """Subset construction over the minterms of the guards; result is complete."""
    a._require_eps_free()
    cells = minterms(labels(a))
    out = a.outgoing()
    start = frozenset({a.initial})
    index = {start: 0}
    queue = deque([start])
    ts = []
    while queue:
        s = queue.popleft()
        src = index[s]
        targets: dict[frozenset[int], list[CharPred]] = {}
        for m in cells:
            # m is a minterm of every guard, so overlap means containment
            t = frozenset(q for p in s for g, q in out[p] if pred_inter(g, m))
            targets.setdefault(t, []).append(m)
        for t, ms in targets.items():
            if t not in index:
                if len(index) >= state_cap:
                    raise ComplementBlowup(state_cap)
                index[t] = len(index)
                queue.append(t)
            guard = ms[0]
            for m in ms[1:]:
                guard = pred_union(guard, m)
            ts.append((src, guard, index[t]))
    finals = [i for s, i in index.items() if s & a.finals]
    return Sfa.make(len(index), ts, 0, finals)


def complement(a: Sfa, state_cap: int = DEFAULT_STATE_CAP) -> Sfa:
    """Deterministic, complete automaton for the complement language."""
    d = determinize(a, state_cap)
    finals = [q for q in d.states if q not in d.finals]
    return Sfa.make(d.num_states, d.transitions, d.initial, finals)


def accepts(a: Sfa, word: Sequence[int] | str) -> bool:
    a._require_eps_free()
    if isinstance(word, str):
        word = [ord(c) for c in word]
    out = a.outgoing()
    current = {a.initial}
    for c in word:
        current = {q for p in current for g, q in out[p] if c in g}
        if not current:
            return False
    return bool(current & a.finals)


def is_empty(a: Sfa) -> bool:
    t = trim(a)
    return not t.finals


def enumerate_words(a: Sfa, alphabet: Sequence[int], max_len: int) -> set[tuple[int, ...]]:
    """All accepted words over ``alphabet`` of length at most ``max_len``."""
    a._require_eps_free()
    if not alphabet:
        raise ValueError("alphabet must be nonempty")
    out = a.outgoing()
    found: set[tuple[int, ...]] = set()
    stack: list[tuple[tuple[int, ...], frozenset[int]]] = [((), frozenset({a.initial}))]
    while stack:
        word, current = stack.pop()
        if current & a.finals:
            found.add(word)
        if len(word) == max_len:
            continue
        for c in alphabet:
            nxt = frozenset(q for p in current for g, q in out[p] if c in g)
            if nxt:
                stack.append((word + (c,), nxt))
    return found


def labels(a: Sfa) -> list[CharPred]:
    """Distinct transition guards, sorted by interval list."""
    return sorted({g for _, g, _ in a.transitions})


def transitions_by_label(a: Sfa) -> dict[CharPred, list[int]]:
    """Map each label to the indices of the transitions carrying it."""
    groups: dict[CharPred, list[int]] = {g: [] for g in labels(a)}
    for i, (_, g, _) in enumerate(a.transitions):
        groups[g].append(i)
    return groups
