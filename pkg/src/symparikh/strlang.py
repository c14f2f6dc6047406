"""AST of the supported string-constraint language."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .regex import Regex


# -- string expressions ------------------------------------------------------


class StrExpr:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Lit(StrExpr):
    codes: tuple[int, ...]

    @classmethod
    def of(cls, s: str) -> Lit:
        return cls(tuple(ord(c) for c in s))


@dataclass(frozen=True, slots=True)
class SVar(StrExpr):
    name: str


@dataclass(frozen=True, slots=True)
class SConcat(StrExpr):
    args: tuple[StrExpr, ...]


@dataclass(frozen=True, slots=True)
class Replace(StrExpr):
    """Replace the first occurrence of ``pattern`` in ``subject`` by ``replacement``."""

    subject: StrExpr
    pattern: StrExpr
    replacement: StrExpr


@dataclass(frozen=True, slots=True)
class Substr(StrExpr):
    subject: StrExpr
    start: IntExpr
    length: IntExpr


# -- integer expressions -----------------------------------------------------


class IntExpr:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class IntConst(IntExpr):
    value: int


@dataclass(frozen=True, slots=True)
class IntVar(IntExpr):
    name: str


@dataclass(frozen=True, slots=True)
class Len(IntExpr):
    arg: StrExpr


@dataclass(frozen=True, slots=True)
class IntAdd(IntExpr):
    args: tuple[IntExpr, ...]


@dataclass(frozen=True, slots=True)
class IntScale(IntExpr):
    coef: int
    arg: IntExpr


# -- boolean structure -------------------------------------------------------


class BoolExpr:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class BoolConst(BoolExpr):
    value: bool


@dataclass(frozen=True, slots=True)
class BoolAnd(BoolExpr):
    args: tuple[BoolExpr, ...]


@dataclass(frozen=True, slots=True)
class BoolOr(BoolExpr):
    args: tuple[BoolExpr, ...]


@dataclass(frozen=True, slots=True)
class BoolNot(BoolExpr):
    arg: BoolExpr


@dataclass(frozen=True, slots=True)
class InRe(BoolExpr):
    arg: StrExpr
    regex: Regex


@dataclass(frozen=True, slots=True)
class NotInRe(BoolExpr):
    arg: StrExpr
    regex: Regex


@dataclass(frozen=True, slots=True)
class StrEq(BoolExpr):
    left: StrExpr
    right: StrExpr


@dataclass(frozen=True, slots=True)
class Contains(BoolExpr):
    """``haystack`` contains ``needle``."""

    haystack: StrExpr
    needle: StrExpr


@dataclass(frozen=True, slots=True)
class PrefixOf(BoolExpr):
    """``prefix`` is a prefix of ``whole``."""

    prefix: StrExpr
    whole: StrExpr


@dataclass(frozen=True, slots=True)
class SuffixOf(BoolExpr):
    suffix: StrExpr
    whole: StrExpr


@dataclass(frozen=True, slots=True)
class IntCmp(BoolExpr):
    op: str  # one of = <= < >= >
    left: IntExpr
    right: IntExpr


StrAtom = Union[InRe, NotInRe, StrEq, Contains, PrefixOf, SuffixOf]
STRING_ATOMS = (InRe, NotInRe, StrEq, Contains, PrefixOf, SuffixOf)


@dataclass
class Script:
    declarations: dict[str, str] = field(default_factory=dict)  # name -> "String" | "Int"
    assertions: list[BoolExpr] = field(default_factory=list)
    logic: str | None = None

    def string_vars(self) -> list[str]:
        return [v for v, s in self.declarations.items() if s == "String"]

    def int_vars(self) -> list[str]:
        return [v for v, s in self.declarations.items() if s == "Int"]


def children(node) -> tuple:
    """Immediate sub-expressions (strings, integers, booleans) of ``node``."""
    if isinstance(node, (SConcat, IntAdd, BoolAnd, BoolOr)):
        return node.args
    if isinstance(node, Replace):
        return (node.subject, node.pattern, node.replacement)
    if isinstance(node, Substr):
        return (node.subject, node.start, node.length)
    if isinstance(node, (Len, BoolNot)):
        return (node.arg,)
    if isinstance(node, IntScale):
        return (node.arg,)
    if isinstance(node, (InRe, NotInRe)):
        return (node.arg,)
    if isinstance(node, StrEq):
        return (node.left, node.right)
    if isinstance(node, Contains):
        return (node.haystack, node.needle)
    if isinstance(node, PrefixOf):
        return (node.prefix, node.whole)
    if isinstance(node, SuffixOf):
        return (node.suffix, node.whole)
    if isinstance(node, IntCmp):
        return (node.left, node.right)
    return ()


def walk(node):
    stack = [node]
    while stack:
        n = stack.pop()
        yield n
        stack.extend(reversed(children(n)))
