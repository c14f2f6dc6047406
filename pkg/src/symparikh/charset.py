"""Character predicates as canonical interval lists over Unicode codepoints.

A :class:`CharPred` is a set of codepoints in ``[0, MAX_CHAR]`` stored as a
sorted tuple of disjoint, non-adjacent inclusive intervals.  Because the
representation is canonical, two predicates denote the same set exactly when
they compare equal.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import EmptyPredicate

MAX_CHAR = 0x2FFFF


def _normalize(intervals: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    out: list[list[int]] = []
    for lo, hi in sorted(intervals):
        if lo > hi:
            raise ValueError(f"empty interval ({lo}, {hi})")
        if lo < 0 or hi > MAX_CHAR:
            raise ValueError(f"interval ({lo}, {hi}) outside the codepoint universe")
        if out and lo <= out[-1][1] + 1:
            out[-1][1] = max(out[-1][1], hi)
        else:
            out.append([lo, hi])
    return tuple((lo, hi) for lo, hi in out)


@dataclass(frozen=True, order=True)
class CharPred:
    intervals: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        prev_hi = -2
        for lo, hi in self.intervals:
            if not (0 <= lo <= hi <= MAX_CHAR) or lo <= prev_hi + 1:
                raise ValueError(f"non-canonical interval list {self.intervals!r}")
            prev_hi = hi

    @classmethod
    def of(cls, intervals: Iterable[tuple[int, int]]) -> CharPred:
        """Build a predicate from arbitrary (possibly overlapping) intervals."""
        return cls(_normalize(intervals))

    @classmethod
    def char(cls, c: int | str) -> CharPred:
        c = ord(c) if isinstance(c, str) else c
        return cls(((c, c),))

    @classmethod
    def range(cls, lo: int | str, hi: int | str) -> CharPred:
        lo = ord(lo) if isinstance(lo, str) else lo
        hi = ord(hi) if isinstance(hi, str) else hi
        return cls(((lo, hi),))

    @classmethod
    def top(cls) -> CharPred:
        return TOP

    @classmethod
    def bottom(cls) -> CharPred:
        return BOTTOM

    def __contains__(self, c: int) -> bool:
        i = bisect.bisect_right(self.intervals, (c, MAX_CHAR + 1)) - 1
        return i >= 0 and self.intervals[i][0] <= c <= self.intervals[i][1]

    def __or__(self, other: CharPred) -> CharPred:
        return pred_union(self, other)

    def __and__(self, other: CharPred) -> CharPred:
        return pred_inter(self, other)

    def __invert__(self) -> CharPred:
        return pred_complement(self)

    def __bool__(self) -> bool:
        return bool(self.intervals)

    def is_top(self) -> bool:
        return self.intervals == ((0, MAX_CHAR),)

    def size(self) -> int:
        return sum(hi - lo + 1 for lo, hi in self.intervals)

    def __repr__(self) -> str:
        if self.is_top():
            return "CharPred(TOP)"
        return f"CharPred({list(self.intervals)!r})"


TOP = CharPred(((0, MAX_CHAR),))
BOTTOM = CharPred(())


def pred_union(p: CharPred, q: CharPred) -> CharPred:
    return CharPred(_normalize(p.intervals + q.intervals))


def pred_inter(p: CharPred, q: CharPred) -> CharPred:
    out = []
    a, b = p.intervals, q.intervals
    i = j = 0
    while i < len(a) and j < len(b):
        lo = max(a[i][0], b[j][0])
        hi = min(a[i][1], b[j][1])
        if lo <= hi:
            out.append((lo, hi))
        if a[i][1] < b[j][1]:
            i += 1
        else:
            j += 1
    return CharPred(tuple(out))


def pred_complement(p: CharPred) -> CharPred:
    out = []
    nxt = 0
    for lo, hi in p.intervals:
        if lo > nxt:
            out.append((nxt, lo - 1))
        nxt = hi + 1
    if nxt <= MAX_CHAR:
        out.append((nxt, MAX_CHAR))
    return CharPred(tuple(out))


def pred_diff(p: CharPred, q: CharPred) -> CharPred:
    return pred_inter(p, pred_complement(q))


def pred_is_empty(p: CharPred) -> bool:
    return not p.intervals


def pred_sample(p: CharPred) -> int:
    """Least codepoint of ``p``."""
    if not p.intervals:
        raise EmptyPredicate("cannot sample from the empty predicate")
    return p.intervals[0][0]


def minterms(preds: Sequence[CharPred]) -> list[CharPred]:
    """Partition the universe into the nonempty cells induced by ``preds``.

    Each returned cell is the set of codepoints sharing one membership
    signature over ``preds``.  Computed by sweeping the interval boundaries;
    cells are ordered by their least element.
    """
    cuts = {0}
    for p in preds:
        for lo, hi in p.intervals:
            cuts.add(lo)
            if hi < MAX_CHAR:
                cuts.add(hi + 1)
    points = sorted(cuts)
    cells: dict[tuple[bool, ...], list[tuple[int, int]]] = {}
    for k, start in enumerate(points):
        end = points[k + 1] - 1 if k + 1 < len(points) else MAX_CHAR
        sig = tuple(start in p for p in preds)
        cells.setdefault(sig, []).append((start, end))
    return [CharPred.of(ivs) for ivs in cells.values()]
