"""Quantifier-free linear integer arithmetic with character-predicate atoms.

Every encoding in the package produces a :class:`LinFormula`: a boolean body
plus a variable table mapping each variable name to a :class:`Sort`.  The
sort carries the implicit range constraint of the variable (counts and
distances are naturals, characters are codepoints, plain integers are
unconstrained).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Union

from .charset import MAX_CHAR, CharPred
from .errors import SortMismatch, UnboundVariable


class Sort(enum.Enum):
    COUNT = "count"
    CHAR = "char"
    DISTANCE = "distance"
    INT = "int"

    def admits(self, value: int) -> bool:
        if self is Sort.INT:
            return True
        if self is Sort.CHAR:
            return 0 <= value <= MAX_CHAR
        return value >= 0


# -- terms -------------------------------------------------------------------


class Term:
    __slots__ = ()

    def __add__(self, other: TermLike) -> Term:
        return add(self, other)

    def __radd__(self, other: TermLike) -> Term:
        return add(other, self)

    def __sub__(self, other: TermLike) -> Term:
        return add(self, scale(-1, other))

    def __rsub__(self, other: TermLike) -> Term:
        return add(other, scale(-1, self))

    def __neg__(self) -> Term:
        return scale(-1, self)

    def __mul__(self, k: int) -> Term:
        return scale(k, self)

    __rmul__ = __mul__


@dataclass(frozen=True, slots=True)
class Const(Term):
    value: int


@dataclass(frozen=True, slots=True)
class Var(Term):
    name: str


@dataclass(frozen=True, slots=True)
class Sum(Term):
    args: tuple[Term, ...]


@dataclass(frozen=True, slots=True)
class Scale(Term):
    coef: int
    arg: Term


@dataclass(frozen=True, slots=True)
class Ite(Term):
    cond: Formula
    then: Term
    orelse: Term


TermLike = Union[Term, int]


def as_term(t: TermLike) -> Term:
    if isinstance(t, Term):
        return t
    if isinstance(t, bool) or not isinstance(t, int):
        raise TypeError(f"not an integer term: {t!r}")
    return Const(t)


def add(*ts: TermLike) -> Term:
    args: list[Term] = []
    k = 0
    for t in ts:
        t = as_term(t)
        parts = t.args if isinstance(t, Sum) else (t,)
        for p in parts:
            if isinstance(p, Const):
                k += p.value
            else:
                args.append(p)
    if k or not args:
        args.append(Const(k))
    return args[0] if len(args) == 1 else Sum(tuple(args))


def total(ts: Iterable[TermLike]) -> Term:
    return add(*ts)


def scale(k: int, t: TermLike) -> Term:
    t = as_term(t)
    if k == 1:
        return t
    if k == 0:
        return Const(0)
    if isinstance(t, Const):
        return Const(k * t.value)
    if isinstance(t, Scale):
        return scale(k * t.coef, t.arg)
    return Scale(k, t)


def ite(cond: Formula, then: TermLike, orelse: TermLike) -> Term:
    if isinstance(cond, BoolConst):
        return as_term(then) if cond.value else as_term(orelse)
    return Ite(cond, as_term(then), as_term(orelse))


# -- formulas ----------------------------------------------------------------


class Formula:
    __slots__ = ()

    def __and__(self, other: Formula) -> Formula:
        return conj(self, other)

    def __or__(self, other: Formula) -> Formula:
        return disj(self, other)

    def __invert__(self) -> Formula:
        return neg(self)


@dataclass(frozen=True, slots=True)
class BoolConst(Formula):
    value: bool


TRUE = BoolConst(True)
FALSE = BoolConst(False)

CMP_OPS = ("=", "<=", "<", ">=", ">", "distinct")


@dataclass(frozen=True, slots=True)
class Cmp(Formula):
    op: str
    lhs: Term
    rhs: Term


@dataclass(frozen=True, slots=True)
class And(Formula):
    args: tuple[Formula, ...]


@dataclass(frozen=True, slots=True)
class Or(Formula):
    args: tuple[Formula, ...]


@dataclass(frozen=True, slots=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True, slots=True)
class PredHolds(Formula):
    pred: CharPred
    arg: Term


def conj(*fs: Formula) -> Formula:
    args: list[Formula] = []
    for f in fs:
        if isinstance(f, And):
            args.extend(f.args)
        elif isinstance(f, BoolConst):
            if not f.value:
                return FALSE
        else:
            args.append(f)
    if not args:
        return TRUE
    return args[0] if len(args) == 1 else And(tuple(args))


def disj(*fs: Formula) -> Formula:
    args: list[Formula] = []
    for f in fs:
        if isinstance(f, Or):
            args.extend(f.args)
        elif isinstance(f, BoolConst):
            if f.value:
                return TRUE
        else:
            args.append(f)
    if not args:
        return FALSE
    return args[0] if len(args) == 1 else Or(tuple(args))


def conj_all(fs: Iterable[Formula]) -> Formula:
    return conj(*fs)


def disj_all(fs: Iterable[Formula]) -> Formula:
    return disj(*fs)


def neg(f: Formula) -> Formula:
    if isinstance(f, BoolConst):
        return BoolConst(not f.value)
    if isinstance(f, Not):
        return f.arg
    return Not(f)


def implies(a: Formula, b: Formula) -> Formula:
    return disj(neg(a), b)


def _cmp(op: str, a: TermLike, b: TermLike) -> Formula:
    return Cmp(op, as_term(a), as_term(b))


def eq(a: TermLike, b: TermLike) -> Formula:
    return _cmp("=", a, b)


def ne(a: TermLike, b: TermLike) -> Formula:
    return _cmp("distinct", a, b)


def le(a: TermLike, b: TermLike) -> Formula:
    return _cmp("<=", a, b)


def lt(a: TermLike, b: TermLike) -> Formula:
    return _cmp("<", a, b)


def ge(a: TermLike, b: TermLike) -> Formula:
    return _cmp(">=", a, b)


def gt(a: TermLike, b: TermLike) -> Formula:
    return _cmp(">", a, b)


def pred_holds(p: CharPred, t: TermLike) -> Formula:
    t = as_term(t)
    if isinstance(t, Const):
        return BoolConst(t.value in p)
    if p.is_top():
        return TRUE
    if not p:
        return FALSE
    return PredHolds(p, t)


def indicator(p: CharPred, t: TermLike) -> Term:
    """0/1 term that is 1 exactly when ``t`` satisfies ``p``."""
    return ite(pred_holds(p, t), 1, 0)


# -- the formula container ---------------------------------------------------


@dataclass(frozen=True)
class LinFormula:
    body: Formula
    sorts: Mapping[str, Sort] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "sorts", dict(self.sorts))

    @property
    def num_vars(self) -> int:
        return len(self.sorts)

    def conj(self, *others: LinFormula) -> LinFormula:
        return lin_conj(self, *others)

    def range_constraints(self) -> Formula:
        return conj_all(sort_constraint(v, s) for v, s in sorted(self.sorts.items()))

    def rename(self, prefix: str, keep: Iterable[str] = ()) -> LinFormula:
        """Prefix every variable except those in ``keep``."""
        keep = set(keep)
        mapping = {v: Var(v if v in keep else prefix + v) for v in self.sorts}
        body = _subst_formula(self.body, mapping)
        sorts = {(v if v in keep else prefix + v): s for v, s in self.sorts.items()}
        return LinFormula(body, sorts)


def merge_sorts(*tables: Mapping[str, Sort]) -> dict[str, Sort]:
    out: dict[str, Sort] = {}
    for tab in tables:
        for v, s in tab.items():
            if out.setdefault(v, s) is not s:
                raise SortMismatch(f"variable {v!r} declared as {out[v].value} and {s.value}")
    return out


def lin_conj(*fs: LinFormula) -> LinFormula:
    return LinFormula(conj(*(f.body for f in fs)), merge_sorts(*(f.sorts for f in fs)))


def sort_constraint(name: str, sort: Sort) -> Formula:
    v = Var(name)
    if sort is Sort.INT:
        return TRUE
    if sort is Sort.CHAR:
        return conj(le(0, v), le(v, MAX_CHAR))
    return ge(v, 0)


class FormulaBuilder:
    """Accumulates declarations and conjuncts, handing out fresh names."""

    def __init__(self, prefix: str = ""):
        self.prefix = prefix
        self.sorts: dict[str, Sort] = {}
        self.parts: list[Formula] = []
        self._counter = itertools.count()

    def declare(self, name: str, sort: Sort) -> Var:
        old = self.sorts.setdefault(name, sort)
        if old is not sort:
            raise SortMismatch(f"variable {name!r} declared as {old.value} and {sort.value}")
        return Var(name)

    def var(self, local: str, sort: Sort) -> Var:
        return self.declare(self.prefix + local, sort)

    def fresh(self, stem: str, sort: Sort) -> Var:
        return self.declare(f"{self.prefix}{stem}!{next(self._counter)}", sort)

    def add(self, *fs: Formula) -> None:
        self.parts.extend(fs)

    def include(self, f: LinFormula) -> Formula:
        """Adopt the declarations of ``f`` and return its body."""
        self.sorts = merge_sorts(self.sorts, f.sorts)
        return f.body

    def build(self) -> LinFormula:
        return LinFormula(conj(*self.parts), self.sorts)


# -- traversal, substitution, evaluation -------------------------------------


def iter_vars(node: Formula | Term) -> Iterator[str]:
    stack: list[Formula | Term] = [node]
    while stack:
        n = stack.pop()
        if isinstance(n, Var):
            yield n.name
        elif isinstance(n, (Sum, And, Or)):
            stack.extend(n.args)
        elif isinstance(n, Scale):
            stack.append(n.arg)
        elif isinstance(n, Ite):
            stack.extend((n.cond, n.then, n.orelse))
        elif isinstance(n, Cmp):
            stack.extend((n.lhs, n.rhs))
        elif isinstance(n, (Not, PredHolds)):
            stack.append(n.arg)


def free_vars(node: Formula | Term | LinFormula) -> set[str]:
    if isinstance(node, LinFormula):
        node = node.body
    return set(iter_vars(node))


def _subst_term(t: Term, b: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        return b.get(t.name, t)
    if isinstance(t, Const):
        return t
    if isinstance(t, Sum):
        return add(*(_subst_term(a, b) for a in t.args))
    if isinstance(t, Scale):
        return scale(t.coef, _subst_term(t.arg, b))
    if isinstance(t, Ite):
        return ite(_subst_formula(t.cond, b), _subst_term(t.then, b), _subst_term(t.orelse, b))
    raise TypeError(t)


def _subst_formula(f: Formula, b: Mapping[str, Term]) -> Formula:
    if isinstance(f, BoolConst):
        return f
    if isinstance(f, Cmp):
        return Cmp(f.op, _subst_term(f.lhs, b), _subst_term(f.rhs, b))
    if isinstance(f, And):
        return conj(*(_subst_formula(a, b) for a in f.args))
    if isinstance(f, Or):
        return disj(*(_subst_formula(a, b) for a in f.args))
    if isinstance(f, Not):
        return neg(_subst_formula(f.arg, b))
    if isinstance(f, PredHolds):
        return pred_holds(f.pred, _subst_term(f.arg, b))
    raise TypeError(f)


def subst(f: LinFormula, bindings: Mapping[str, TermLike],
          extra_sorts: Mapping[str, Sort] | None = None) -> LinFormula:
    """Replace variables by terms; bound variables leave the table.

    Variables occurring in the replacement terms must be declared either in
    ``f`` or in ``extra_sorts``.  A binding to a variable of another sort, or
    to a constant outside the bound variable's range, raises SortMismatch.
    """
    table = merge_sorts(f.sorts, extra_sorts or {})
    b: dict[str, Term] = {}
    for name, t in bindings.items():
        t = as_term(t)
        sort = table.get(name)
        if sort is not None:
            if isinstance(t, Var) and t.name in table and table[t.name] is not sort:
                raise SortMismatch(f"{name!r} is {sort.value} but {t.name!r} is {table[t.name].value}")
            if isinstance(t, Const) and not sort.admits(t.value):
                raise SortMismatch(f"{t.value} is outside the range of {sort.value} variable {name!r}")
        for v in iter_vars(t):
            if v not in table:
                raise SortMismatch(f"replacement mentions undeclared variable {v!r}")
        b[name] = t
    body = _subst_formula(f.body, b)
    used = free_vars(body)
    sorts = {v: s for v, s in table.items() if v not in b and (v in f.sorts or v in used)}
    return LinFormula(body, sorts)


def eval_term(t: Term, a: Mapping[str, int]) -> int:
    if isinstance(t, Const):
        return t.value
    if isinstance(t, Var):
        try:
            return a[t.name]
        except KeyError:
            raise UnboundVariable(t.name) from None
    if isinstance(t, Sum):
        return sum(eval_term(x, a) for x in t.args)
    if isinstance(t, Scale):
        return t.coef * eval_term(t.arg, a)
    if isinstance(t, Ite):
        return eval_term(t.then, a) if eval_formula(t.cond, a) else eval_term(t.orelse, a)
    raise TypeError(t)


_CMP = {
    "=": lambda x, y: x == y,
    "distinct": lambda x, y: x != y,
    "<=": lambda x, y: x <= y,
    "<": lambda x, y: x < y,
    ">=": lambda x, y: x >= y,
    ">": lambda x, y: x > y,
}


def eval_formula(f: Formula, a: Mapping[str, int]) -> bool:
    if isinstance(f, BoolConst):
        return f.value
    if isinstance(f, Cmp):
        return _CMP[f.op](eval_term(f.lhs, a), eval_term(f.rhs, a))
    if isinstance(f, And):
        return all(eval_formula(x, a) for x in f.args)
    if isinstance(f, Or):
        return any(eval_formula(x, a) for x in f.args)
    if isinstance(f, Not):
        return not eval_formula(f.arg, a)
    if isinstance(f, PredHolds):
        return eval_term(f.arg, a) in f.pred
    raise TypeError(f)


def evaluate(f: LinFormula | Formula, assignment: Mapping[str, int],
             check_sorts: bool = True) -> bool:
    """Truth value of ``f`` under ``assignment``.

    For a LinFormula the implicit sort ranges are checked as well unless
    ``check_sorts`` is false.
    """
    if isinstance(f, LinFormula):
        if check_sorts:
            for v, s in f.sorts.items():
                if v in assignment and not s.admits(assignment[v]):
                    return False
        return eval_formula(f.body, assignment)
    return eval_formula(f, assignment)
