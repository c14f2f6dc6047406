"""Plain (finite-alphabet) context-free grammars with indexed rules.

Terminals are codepoints (``int``), nonterminals are names (``str``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

Sym = Union[str, int]


@dataclass(frozen=True)
class Cfg:
    start: str
    rules: tuple[tuple[str, tuple[Sym, ...]], ...]

    @classmethod
    def make(cls, start: str, rules) -> Cfg:
        seen = set()
        out = []
        for lhs, rhs in rules:
            r = (lhs, tuple(rhs))
            if r not in seen:
                seen.add(r)
                out.append(r)
        return cls(start, tuple(out))

    @property
    def nonterminals(self) -> list[str]:
        names = {self.start}
        for lhs, rhs in self.rules:
            names.add(lhs)
            names.update(s for s in rhs if isinstance(s, str))
        return [self.start] + sorted(names - {self.start})

    @property
    def max_rhs(self) -> int:
        return max((len(rhs) for _, rhs in self.rules), default=0)

    def words(self, max_len: int) -> set[tuple[int, ...]]:
        """Every generated word of length at most ``max_len`` (exact fixed point)."""
        lang: dict[str, set[tuple[int, ...]]] = {a: set() for a in self.nonterminals}
        changed = True
        while changed:
            changed = False
            for lhs, rhs in self.rules:
                partial: set[tuple[int, ...]] = {()}
                for s in rhs:
                    if isinstance(s, int):
                        partial = {w + (s,) for w in partial if len(w) < max_len}
                    else:
                        partial = {w + v for w in partial for v in lang[s]
                                   if len(w) + len(v) <= max_len}
                    if not partial:
                        break
                new = partial - lang[lhs]
                if new:
                    lang[lhs] |= new
                    changed = True
        return lang[self.start]
