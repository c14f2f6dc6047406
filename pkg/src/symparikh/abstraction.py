"""Abstraction of string constraints into linear arithmetic over predicate counts.

Every string term is mapped to a vector of counts, one per predicate in Psi
(Psi[0] is the full character set, so component 0 is the length).  The
abstraction is an overapproximation: if the resulting formula is
unsatisfiable then so is the original script.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .charset import TOP, CharPred
from .errors import ComplementBlowup, UnsupportedFeature
from .formula import (
    TRUE, Const, Formula, FormulaBuilder, LinFormula, Sort, Term, Var, add, conj, disj, eq, ge,
    gt, le, lt, scale,
)
from .regex import Char, Range, Regex, compile_regex
from .sfa import DEFAULT_STATE_CAP, Sfa, complement
from .strlang import (
    BoolAnd, BoolConst, BoolExpr, BoolNot, BoolOr, Contains, InRe, IntAdd, IntCmp, IntConst,
    IntExpr, IntScale, IntVar, Len, Lit, NotInRe, PrefixOf, Replace, SConcat, Script, StrEq,
    StrExpr, Substr, SuffixOf, SVar, walk,
)
from .symbolic import EncodeOpts, any_parikh, build_phi_regex

_NEGATED_OP = {"<=": ">", "<": ">=", ">=": "<", ">": "<="}
_CMP = {"=": eq, "<=": le, "<": lt, ">=": ge, ">": gt}


class Mode(enum.Enum):
    REGEX = "regex"
    REGEX_LITERALS = "regex+literals"


# -- negation normal form ----------------------------------------------------


def to_nnf(e: BoolExpr, positive: bool = True) -> BoolExpr:
    """Push negations to the atoms.

    Negated membership becomes :class:`NotInRe`, negated integer comparisons
    are rewritten in place, and other negated string atoms stay wrapped in
    :class:`BoolNot` for :func:`abstract_bool` to weaken.
    """
    if isinstance(e, BoolNot):
        return to_nnf(e.arg, not positive)
    if isinstance(e, BoolConst):
        return e if positive else BoolConst(not e.value)
    if isinstance(e, (BoolAnd, BoolOr)):
        args = tuple(to_nnf(a, positive) for a in e.args)
        same = isinstance(e, BoolAnd) == positive
        return BoolAnd(args) if same else BoolOr(args)
    if positive:
        return e
    if isinstance(e, InRe):
        return NotInRe(e.arg, e.regex)
    if isinstance(e, NotInRe):
        return InRe(e.arg, e.regex)
    if isinstance(e, IntCmp):
        if e.op == "=":
            return BoolOr((IntCmp("<", e.left, e.right), IntCmp(">", e.left, e.right)))
        return IntCmp(_NEGATED_OP[e.op], e.left, e.right)
    return BoolNot(e)


# -- predicate selection -----------------------------------------------------


def _regexes(script: Script) -> list[Regex]:
    out = []
    for a in script.assertions:
        for node in walk(a):
            if isinstance(node, (InRe, NotInRe)):
                out.append(node.regex)
    return out


def _syntactic_classes(r: Regex, out: set[CharPred]) -> None:
    stack = [r]
    while stack:
        n = stack.pop()
        if isinstance(n, Char):
            out.add(CharPred.char(n.code))
        elif isinstance(n, Range):
            out.add(CharPred.range(n.lo, n.hi))
        else:
            stack.extend(getattr(n, f) for f in ("arg", "left", "right") if hasattr(n, f))


def select_predicates(script: Script, mode: Mode | str = Mode.REGEX,
                      complement_cap: int = DEFAULT_STATE_CAP) -> list[CharPred]:
    """Psi: the full set first, then the intervals of compiled-regex guards
    (and, in literal mode, every literal character), deduplicated and sorted."""
    mode = Mode(mode)
    found: set[CharPred] = set()
    for r in _regexes(script):
        try:
            sfa = compile_regex(r, complement_cap)
        except ComplementBlowup:
            _syntactic_classes(r, found)
            continue
        for _, guard, _ in sfa.transitions:
            found.update(CharPred.range(lo, hi) for lo, hi in guard.intervals)
    if mode is Mode.REGEX_LITERALS:
        for a in script.assertions:
            for node in walk(a):
                if isinstance(node, Lit):
                    found.update(CharPred.char(c) for c in node.codes)
    found.discard(TOP)
    return [TOP] + sorted(found)


# -- abstraction context -----------------------------------------------------


@dataclass
class AbstractionCtx:
    preds: list[CharPred]
    opts: EncodeOpts = field(default_factory=EncodeOpts)
    complement_cap: int = DEFAULT_STATE_CAP
    builder: FormulaBuilder = field(default_factory=FormulaBuilder)
    vectors: dict[str, list[Var]] = field(default_factory=dict)
    side: list[Formula] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    _counter: itertools.count = field(default_factory=itertools.count)
    _sfa_cache: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.preds or self.preds[0] != TOP:
            raise ValueError("the first predicate must be the full character set")

    @property
    def n(self) -> int:
        return len(self.preds)

    def fresh_prefix(self, stem: str) -> str:
        return f"{stem}{next(self._counter)}."

    def fresh_vector(self, stem: str) -> list[Var]:
        p = self.fresh_prefix(stem)
        return [self.builder.declare(f"{p}{i}", Sort.COUNT) for i in range(self.n)]

    def anyparikh(self, vec: Sequence[Var]) -> Formula:
        f = any_parikh(self.preds, self.opts, self.fresh_prefix("any"), [v.name for v in vec])
        return self.builder.include(f)

    def string_var(self, name: str) -> list[Var]:
        vec = self.vectors.get(name)
        if vec is None:
            vec = [self.builder.declare(f"str.{name}.{i}", Sort.COUNT) for i in range(self.n)]
            self.vectors[name] = vec
            self.side.append(self.anyparikh(vec))
        return vec

    def int_var(self, name: str) -> Var:
        return self.builder.declare(f"int.{name}", Sort.INT)

    def compiled(self, r: Regex, negated: bool) -> Sfa:
        key = (r, negated)
        if key not in self._sfa_cache:
            a = compile_regex(r, self.complement_cap)
            self._sfa_cache[key] = complement(a, self.complement_cap) if negated else a
        return self._sfa_cache[key]


def literal_counts(codes: Sequence[int], preds: Sequence[CharPred]) -> list[int]:
    return [sum(1 for c in codes if c in p) for p in preds]


def abstract_sexp(e: StrExpr, ctx: AbstractionCtx) -> list[Term]:
    if isinstance(e, Lit):
        return [Const(k) for k in literal_counts(e.codes, ctx.preds)]
    if isinstance(e, SVar):
        return list(ctx.string_var(e.name))
    if isinstance(e, SConcat):
        parts = [abstract_sexp(a, ctx) for a in e.args]
        return [add(*col) for col in zip(*parts)]
    if isinstance(e, Replace):
        c1 = abstract_sexp(e.subject, ctx)
        c2 = abstract_sexp(e.pattern, ctx)
        c3 = abstract_sexp(e.replacement, ctx)
        v = ctx.fresh_vector("rep")
        ctx.side.append(disj(
            _vec_eq(v, c1),
            _vec_eq(v, [add(a, scale(-1, b), c) for a, b, c in zip(c1, c2, c3)]),
            conj(_vec_eq(c2, [Const(0)] * ctx.n), _vec_eq(v, [add(a, c) for a, c in zip(c1, c3)])),
        ))
        return list(v)
    if isinstance(e, Substr):
        c1 = abstract_sexp(e.subject, ctx)
        v = ctx.fresh_vector("sub")
        ctx.side.append(conj(*(le(a, b) for a, b in zip(v, c1))))
        ctx.side.append(ctx.anyparikh(v))
        return list(v)
    raise TypeError(f"not a string expression: {e!r}")


def abstract_int(e: IntExpr, ctx: AbstractionCtx) -> Term:
    if isinstance(e, IntConst):
        return Const(e.value)
    if isinstance(e, IntVar):
        return ctx.int_var(e.name)
    if isinstance(e, Len):
        return abstract_sexp(e.arg, ctx)[0]
    if isinstance(e, IntAdd):
        return add(*(abstract_int(a, ctx) for a in e.args))
    if isinstance(e, IntScale):
        return scale(e.coef, abstract_int(e.arg, ctx))
    raise TypeError(f"not an integer expression: {e!r}")


def _vec_eq(u: Sequence[Term], v: Sequence[Term]) -> Formula:
    return conj(*(eq(a, b) for a, b in zip(u, v)))


def _membership(arg: StrExpr, r: Regex, negated: bool, ctx: AbstractionCtx) -> Formula:
    try:
        a = ctx.compiled(r, negated)
    except ComplementBlowup as exc:
        ctx.warnings.append(f"membership constraint dropped: {exc}")
        return TRUE
    vec = abstract_sexp(arg, ctx)
    prefix = ctx.fresh_prefix("re")
    outs = [f"{prefix}x{i + 1}" for i in range(ctx.n)]
    phi = ctx.builder.include(build_phi_regex(a, ctx.preds, ctx.opts, prefix, outs))
    return conj(phi, *(eq(Var(o), t) for o, t in zip(outs, vec)))


def abstract_bool(e: BoolExpr, ctx: AbstractionCtx) -> Formula:
    """Abstract an NNF boolean expression."""
    if isinstance(e, BoolConst):
        return TRUE if e.value else disj()
    if isinstance(e, BoolAnd):
        return conj(*(abstract_bool(a, ctx) for a in e.args))
    if isinstance(e, BoolOr):
        return disj(*(abstract_bool(a, ctx) for a in e.args))
    if isinstance(e, InRe):
        return _membership(e.arg, e.regex, False, ctx)
    if isinstance(e, NotInRe):
        return _membership(e.arg, e.regex, True, ctx)
    if isinstance(e, StrEq):
        return _vec_eq(abstract_sexp(e.left, ctx), abstract_sexp(e.right, ctx))
    if isinstance(e, Contains):
        h, n = abstract_sexp(e.haystack, ctx), abstract_sexp(e.needle, ctx)
        return conj(*(ge(a, b) for a, b in zip(h, n)))
    if isinstance(e, PrefixOf):
        p, w = abstract_sexp(e.prefix, ctx), abstract_sexp(e.whole, ctx)
        return conj(*(le(a, b) for a, b in zip(p, w)))
    if isinstance(e, SuffixOf):
        s, w = abstract_sexp(e.suffix, ctx), abstract_sexp(e.whole, ctx)
        return conj(*(le(a, b) for a, b in zip(s, w)))
    if isinstance(e, IntCmp):
        return _CMP[e.op](abstract_int(e.left, ctx), abstract_int(e.right, ctx))
    if isinstance(e, BoolNot) and isinstance(e.arg, (StrEq, Contains, PrefixOf, SuffixOf)):
        # abstract counts cannot refute a disequality; weaken to true
        _touch_vars(e.arg, ctx)
        ctx.warnings.append(f"negated {type(e.arg).__name__} weakened to true")
        return TRUE
    if isinstance(e, BoolNot):
        raise ValueError("abstract_bool expects negation normal form")
    raise UnsupportedFeature(type(e).__name__)


def _touch_vars(e, ctx: AbstractionCtx) -> None:
    for node in walk(e):
        if isinstance(node, SVar):
            ctx.string_var(node.name)


def abstract_script(script: Script, mode: Mode | str = Mode.REGEX,
                    opts: EncodeOpts | None = None,
                    complement_cap: int = DEFAULT_STATE_CAP,
                    preds: Sequence[CharPred] | None = None) -> tuple[LinFormula, AbstractionCtx]:
    """Abstraction of the whole script, plus the context (predicates, warnings)."""
    if preds is None:
        preds = select_predicates(script, mode, complement_cap)
    ctx = AbstractionCtx(list(preds), opts or EncodeOpts(), complement_cap)
    for name in script.string_vars():
        ctx.string_var(name)
    for name in script.int_vars():
        ctx.int_var(name)
    body = [abstract_bool(to_nnf(a), ctx) for a in script.assertions]
    return LinFormula(conj(*ctx.side, *body), ctx.builder.sorts), ctx
