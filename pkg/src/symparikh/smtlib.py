"""Reader and printer for the supported QF_SLIA fragment of SMT-LIB 2.6."""

from __future__ import annotations

import math
from typing import Callable

from .errors import ParseError, UnsupportedFeature
from .regex import (
    And as ReAnd, AnyChar, Char, Concat, Empty, Epsilon, Loop, Not as ReNot, Opt, Or as ReOr,
    Plus, Range, Regex, Star, literal,
)
from .sexpr import Keyword, Numeral, SList, StringLit, Symbol, decode_string, encode_string, \
    parse_sexprs, quote_symbol
from .strlang import (
    BoolAnd, BoolConst, BoolExpr, BoolNot, BoolOr, Contains, InRe, IntAdd, IntCmp, IntConst,
    IntExpr, IntScale, IntVar, Len, Lit, NotInRe, PrefixOf, Replace, SConcat, Script, StrEq,
    StrExpr, Substr, SuffixOf, SVar,
)

_IGNORED = {"set-info", "set-option", "check-sat", "get-model", "exit", "get-info",
            "get-value", "echo"}

_BOOL_HEADS = {"and", "or", "not", "=>", "=", "distinct", "<=", "<", ">=", ">", "str.in_re",
               "str.in.re", "str.contains", "str.prefixof", "str.suffixof"}

# heads understood somewhere; one of these in the wrong position is a sort error
_KNOWN_HEADS = _BOOL_HEADS | {
    "str.++", "str.replace", "str.substr", "str.len", "+", "-", "*", "let", "str.to_re",
    "re.none", "re.all", "re.allchar", "re.range", "re.union", "re.inter", "re.++", "re.diff",
    "re.comp", "re.*", "re.+", "re.opt", "re.loop", "re.^",
}


def _where(e) -> tuple[int, int]:
    return getattr(e, "line", 0), getattr(e, "col", 0)


def _head(e) -> str | None:
    if isinstance(e, SList) and e and isinstance(e[0], Symbol):
        return e[0].name
    return None


class _Reader:
    def __init__(self):
        self.script = Script()
        self.scopes: list[dict[str, object]] = []

    # -- commands --

    def command(self, cmd) -> None:
        name = _head(cmd)
        if name is None:
            raise ParseError("expected a command", *_where(cmd))
        if name in _IGNORED:
            return
        if name == "set-logic":
            self._arity(cmd, 2)
            self.script.logic = self._symbol(cmd[1])
        elif name in ("declare-fun", "declare-const"):
            self._declare(cmd, name)
        elif name == "assert":
            self._arity(cmd, 2)
            self.script.assertions.append(self.boolean(cmd[1]))
        else:
            raise UnsupportedFeature(name)

    def _declare(self, cmd, name: str) -> None:
        if name == "declare-fun":
            self._arity(cmd, 4)
            if not isinstance(cmd[2], SList) or cmd[2]:
                raise UnsupportedFeature("declare-fun with arguments")
            sort_expr = cmd[3]
        else:
            self._arity(cmd, 3)
            sort_expr = cmd[2]
        var = self._symbol(cmd[1])
        sort = self._symbol(sort_expr)
        if sort not in ("String", "Int"):
            raise UnsupportedFeature(f"sort {sort}")
        if var in self.script.declarations:
            raise ParseError(f"{var!r} declared twice", *_where(cmd[1]))
        self.script.declarations[var] = sort

    # -- helpers --

    @staticmethod
    def _arity(e: SList, n: int) -> None:
        if len(e) != n:
            raise ParseError(f"{_head(e) or 'expression'} expects {n - 1} argument(s)", *_where(e))

    @staticmethod
    def _symbol(e) -> str:
        if not isinstance(e, Symbol):
            raise ParseError("expected a symbol", *_where(e))
        return e.name

    def _lookup(self, name: str):
        for scope in reversed(self.scopes):
            if name in scope:
                return scope[name]
        return None

    def _sort_of(self, e) -> str:
        """Best-effort sort inference, used to disambiguate ``=``."""
        if isinstance(e, StringLit):
            return "String"
        if isinstance(e, Numeral):
            return "Int"
        if isinstance(e, Symbol):
            bound = self._lookup(e.name)
            if bound is not None:
                return {StrExpr: "String", IntExpr: "Int", BoolExpr: "Bool"}[
                    next(k for k in (StrExpr, IntExpr, BoolExpr) if isinstance(bound, k))]
            if e.name in ("true", "false"):
                return "Bool"
            sort = self.script.declarations.get(e.name)
            if sort is None:
                raise ParseError(f"undeclared symbol {e.name!r}", *_where(e))
            return sort
        h = _head(e)
        if h == "let":
            return self._with_let(e, lambda body: self._sort_of(body))
        if h in ("str.++", "str.replace", "str.substr"):
            return "String"
        if h in ("str.len", "+", "-", "*"):
            return "Int"
        if h in _BOOL_HEADS:
            return "Bool"
        if h is not None:
            raise UnsupportedFeature(h)
        raise ParseError("malformed expression", *_where(e))

    def _with_let(self, e: SList, k: Callable):
        self._arity(e, 3)
        if not isinstance(e[1], SList):
            raise ParseError("malformed let", *_where(e))
        scope = {}
        for binding in e[1]:
            if not isinstance(binding, SList) or len(binding) != 2:
                raise ParseError("malformed let binding", *_where(binding))
            name = self._symbol(binding[0])
            sort = self._sort_of(binding[1])
            scope[name] = {"String": self.string, "Int": self.integer,
                           "Bool": self.boolean}[sort](binding[1])
        self.scopes.append(scope)
        try:
            return k(e[2])
        finally:
            self.scopes.pop()

    def _bound(self, e, kind):
        if isinstance(e, Symbol):
            v = self._lookup(e.name)
            if v is not None:
                if not isinstance(v, kind):
                    raise ParseError(f"{e.name!r} has the wrong sort", *_where(e))
                return v
        return None

    # -- strings --

    def string(self, e) -> StrExpr:
        if isinstance(e, StringLit):
            return Lit(decode_string(e.raw))
        bound = self._bound(e, StrExpr)
        if bound is not None:
            return bound
        if isinstance(e, Symbol):
            if self.script.declarations.get(e.name) != "String":
                raise ParseError(f"{e.name!r} is not a declared string", *_where(e))
            return SVar(e.name)
        h = _head(e)
        if h == "let":
            return self._with_let(e, self.string)
        if h == "str.++":
            if len(e) < 2:
                raise ParseError("str.++ needs arguments", *_where(e))
            return SConcat(tuple(self.string(a) for a in e[1:]))
        if h == "str.replace":
            self._arity(e, 4)
            return Replace(self.string(e[1]), self.string(e[2]), self.string(e[3]))
        if h == "str.substr":
            self._arity(e, 4)
            return Substr(self.string(e[1]), self.integer(e[2]), self.integer(e[3]))
        self._unknown(e, "string")

    # -- integers --

    def integer(self, e) -> IntExpr:
        if isinstance(e, Numeral):
            return IntConst(e.value)
        bound = self._bound(e, IntExpr)
        if bound is not None:
            return bound
        if isinstance(e, Symbol):
            if self.script.declarations.get(e.name) != "Int":
                raise ParseError(f"{e.name!r} is not a declared integer", *_where(e))
            return IntVar(e.name)
        h = _head(e)
        if h == "let":
            return self._with_let(e, self.integer)
        if h == "str.len":
            self._arity(e, 2)
            return Len(self.string(e[1]))
        if h == "+":
            return IntAdd(tuple(self.integer(a) for a in e[1:]))
        if h == "-":
            args = [self.integer(a) for a in e[1:]]
            if not args:
                raise ParseError("- needs arguments", *_where(e))
            if len(args) == 1:
                a = args[0]
                return IntConst(-a.value) if isinstance(a, IntConst) else IntScale(-1, a)
            return IntAdd((args[0], *(IntScale(-1, a) for a in args[1:])))
        if h == "*":
            self._arity(e, 3)
            a, b = self.integer(e[1]), self.integer(e[2])
            if isinstance(a, IntConst):
                return IntScale(a.value, b)
            if isinstance(b, IntConst):
                return IntScale(b.value, a)
            raise UnsupportedFeature("nonlinear multiplication")
        self._unknown(e, "integer")

    # -- booleans --

    def boolean(self, e) -> BoolExpr:
        if isinstance(e, Symbol) and e.name in ("true", "false") and self._lookup(e.name) is None:
            return BoolConst(e.name == "true")
        bound = self._bound(e, BoolExpr)
        if bound is not None:
            return bound
        if isinstance(e, Symbol):
            if e.name in self.script.declarations:
                raise ParseError(f"{e.name!r} is not boolean", *_where(e))
            raise ParseError(f"undeclared symbol {e.name!r}", *_where(e))
        h = _head(e)
        if h == "let":
            return self._with_let(e, self.boolean)
        if h == "and":
            return BoolAnd(tuple(self.boolean(a) for a in e[1:]))
        if h == "or":
            return BoolOr(tuple(self.boolean(a) for a in e[1:]))
        if h == "not":
            self._arity(e, 2)
            return BoolNot(self.boolean(e[1]))
        if h == "=>":
            if len(e) < 3:
                raise ParseError("=> needs two arguments", *_where(e))
            args = [self.boolean(a) for a in e[1:]]
            out = args[-1]
            for a in reversed(args[:-1]):
                out = BoolOr((BoolNot(a), out))
            return out
        if h in ("=", "distinct"):
            if len(e) < 3:
                raise ParseError(f"{h} needs two arguments", *_where(e))
            sort = self._sort_of(e[1])
            if sort == "Bool":
                raise UnsupportedFeature("boolean equality")
            parse = self.string if sort == "String" else self.integer
            args = [parse(a) for a in e[1:]]
            make = (lambda a, b: StrEq(a, b)) if sort == "String" else (lambda a, b: IntCmp("=", a, b))
            if h == "=":
                atoms = [make(a, b) for a, b in zip(args, args[1:])]
            else:
                atoms = [BoolNot(make(a, b)) for i, a in enumerate(args) for b in args[i + 1:]]
            return atoms[0] if len(atoms) == 1 else BoolAnd(tuple(atoms))
        if h in ("<=", "<", ">=", ">"):
            if len(e) < 3:
                raise ParseError(f"{h} needs two arguments", *_where(e))
            args = [self.integer(a) for a in e[1:]]
            atoms = [IntCmp(h, a, b) for a, b in zip(args, args[1:])]
            return atoms[0] if len(atoms) == 1 else BoolAnd(tuple(atoms))
        if h in ("str.in_re", "str.in.re"):
            self._arity(e, 3)
            return InRe(self.string(e[1]), self.regex(e[2]))
        if h == "str.contains":
            self._arity(e, 3)
            return Contains(self.string(e[1]), self.string(e[2]))
        if h == "str.prefixof":
            self._arity(e, 3)
            return PrefixOf(self.string(e[1]), self.string(e[2]))
        if h == "str.suffixof":
            self._arity(e, 3)
            return SuffixOf(self.string(e[1]), self.string(e[2]))
        self._unknown(e, "boolean")

    # -- regexes --

    def regex(self, e) -> Regex:
        if isinstance(e, Symbol):
            if e.name == "re.none":
                return Empty()
            if e.name == "re.allchar":
                return AnyChar()
            if e.name == "re.all":
                return Star(AnyChar())
            self._unknown(e, "regex")
        h = _head(e)
        if h in ("str.to_re", "str.to.re"):
            self._arity(e, 2)
            if not isinstance(e[1], StringLit):
                raise UnsupportedFeature("str.to_re on a non-literal")
            return literal(decode_string(e[1].raw))
        if h == "re.range":
            self._arity(e, 3)
            lo, hi = (self._char_arg(a) for a in e[1:])
            if lo is None or hi is None or lo > hi:
                return Empty()
            return Char(lo) if lo == hi else Range(lo, hi)
        if h in ("re.union", "re.inter", "re.++"):
            if len(e) < 2:
                raise ParseError(f"{h} needs arguments", *_where(e))
            args = [self.regex(a) for a in e[1:]]
            node = {"re.union": ReOr, "re.inter": ReAnd, "re.++": Concat}[h]
            out = args[0]
            for a in args[1:]:
                out = node(out, a)
            return out
        if h == "re.diff":
            self._arity(e, 3)
            return ReAnd(self.regex(e[1]), ReNot(self.regex(e[2])))
        if h in ("re.comp", "re.*", "re.+", "re.opt"):
            self._arity(e, 2)
            node = {"re.comp": ReNot, "re.*": Star, "re.+": Plus, "re.opt": Opt}[h]
            return node(self.regex(e[1]))
        if h == "re.loop":
            # legacy form (re.loop r lo hi)
            if len(e) not in (3, 4):
                raise ParseError("re.loop expects a regex and bounds", *_where(e))
            bounds = [self._numeral(a) for a in e[2:]]
            return self._loop(self.regex(e[1]), bounds[0], bounds[1] if len(bounds) > 1 else None, e)
        if isinstance(e, SList) and len(e) == 2 and _head(e[0]) == "_":
            ix = e[0]
            op = self._symbol(ix[1]) if len(ix) > 1 else ""
            if op == "re.loop" and len(ix) == 4:
                return self._loop(self.regex(e[1]), self._numeral(ix[2]), self._numeral(ix[3]), e)
            if op == "re.^" and len(ix) == 3:
                n = self._numeral(ix[2])
                return self._loop(self.regex(e[1]), n, n, e)
            raise UnsupportedFeature(op or "indexed operator")
        self._unknown(e, "regex")

    def _loop(self, r: Regex, lo: int, hi: int | None, where) -> Regex:
        if hi is None:
            return Loop(r, lo)
        if hi < lo:
            return Empty()
        return Loop(r, lo, hi)

    @staticmethod
    def _numeral(e) -> int:
        if not isinstance(e, Numeral):
            raise ParseError("expected a numeral", *_where(e))
        return e.value

    @staticmethod
    def _char_arg(e) -> int | None:
        if not isinstance(e, StringLit):
            raise UnsupportedFeature("re.range on a non-literal")
        codes = decode_string(e.raw)
        return codes[0] if len(codes) == 1 else None

    def _unknown(self, e, what: str):
        h = _head(e)
        if h is None and isinstance(e, SList) and e and _head(e[0]) == "_":
            h = str(e[0][1]) if len(e[0]) > 1 else "_"
        if h in _KNOWN_HEADS:
            raise ParseError(f"{h} cannot occur in {what} position", *_where(e))
        if h is not None:
            raise UnsupportedFeature(h)
        if isinstance(e, Symbol):
            raise ParseError(f"unexpected symbol {e.name!r} in {what} position", *_where(e))
        if isinstance(e, Keyword):
            raise ParseError(f"unexpected keyword :{e.name}", *_where(e))
        raise ParseError(f"malformed {what} expression", *_where(e))


def parse_script(text: str | bytes) -> Script:
    """Parse SMT-LIB text into a :class:`Script`.

    Raises :class:`ParseError` on malformed input and
    :class:`UnsupportedFeature` for constructs outside the fragment.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not UTF-8: {exc}", 0, 0) from None
    reader = _Reader()
    for cmd in parse_sexprs(text):
        reader.command(cmd)
    return reader.script


# -- printing ----------------------------------------------------------------


def _int(k: int) -> str:
    return str(k) if k >= 0 else f"(- {-k})"


def print_str(e: StrExpr) -> str:
    if isinstance(e, Lit):
        return encode_string(e.codes)
    if isinstance(e, SVar):
        return quote_symbol(e.name)
    if isinstance(e, SConcat):
        return "(str.++ " + " ".join(print_str(a) for a in e.args) + ")"
    if isinstance(e, Replace):
        return f"(str.replace {print_str(e.subject)} {print_str(e.pattern)} {print_str(e.replacement)})"
    if isinstance(e, Substr):
        return f"(str.substr {print_str(e.subject)} {print_int(e.start)} {print_int(e.length)})"
    raise TypeError(e)


def print_int(e: IntExpr) -> str:
    if isinstance(e, IntConst):
        return _int(e.value)
    if isinstance(e, IntVar):
        return quote_symbol(e.name)
    if isinstance(e, Len):
        return f"(str.len {print_str(e.arg)})"
    if isinstance(e, IntAdd):
        return "(+ " + " ".join(print_int(a) for a in e.args) + ")"
    if isinstance(e, IntScale):
        return f"(* {_int(e.coef)} {print_int(e.arg)})"
    raise TypeError(e)


def print_regex(r: Regex) -> str:
    if isinstance(r, Char):
        return f"(str.to_re {encode_string((r.code,))})"
    if isinstance(r, Range):
        return f"(re.range {encode_string((r.lo,))} {encode_string((r.hi,))})"
    if isinstance(r, Epsilon):
        return '(str.to_re "")'
    if isinstance(r, Empty):
        return "re.none"
    if isinstance(r, AnyChar):
        return "re.allchar"
    if isinstance(r, Concat):
        return f"(re.++ {print_regex(r.left)} {print_regex(r.right)})"
    if isinstance(r, ReOr):
        return f"(re.union {print_regex(r.left)} {print_regex(r.right)})"
    if isinstance(r, ReAnd):
        return f"(re.inter {print_regex(r.left)} {print_regex(r.right)})"
    if isinstance(r, ReNot):
        return f"(re.comp {print_regex(r.arg)})"
    if isinstance(r, Star):
        return f"(re.* {print_regex(r.arg)})"
    if isinstance(r, Plus):
        return f"(re.+ {print_regex(r.arg)})"
    if isinstance(r, Opt):
        return f"(re.opt {print_regex(r.arg)})"
    if isinstance(r, Loop):
        inner = print_regex(r.arg)
        if math.isinf(r.hi):
            return f"(re.++ ((_ re.^ {r.lo}) {inner}) (re.* {inner}))"
        return f"((_ re.loop {r.lo} {int(r.hi)}) {inner})"
    raise TypeError(r)


def print_bool(e: BoolExpr) -> str:
    if isinstance(e, BoolConst):
        return "true" if e.value else "false"
    if isinstance(e, BoolAnd):
        return "(and " + " ".join(print_bool(a) for a in e.args) + ")" if e.args else "true"
    if isinstance(e, BoolOr):
        return "(or " + " ".join(print_bool(a) for a in e.args) + ")" if e.args else "false"
    if isinstance(e, BoolNot):
        return f"(not {print_bool(e.arg)})"
    if isinstance(e, InRe):
        return f"(str.in_re {print_str(e.arg)} {print_regex(e.regex)})"
    if isinstance(e, NotInRe):
        return f"(not (str.in_re {print_str(e.arg)} {print_regex(e.regex)}))"
    if isinstance(e, StrEq):
        return f"(= {print_str(e.left)} {print_str(e.right)})"
    if isinstance(e, Contains):
        return f"(str.contains {print_str(e.haystack)} {print_str(e.needle)})"
    if isinstance(e, PrefixOf):
        return f"(str.prefixof {print_str(e.prefix)} {print_str(e.whole)})"
    if isinstance(e, SuffixOf):
        return f"(str.suffixof {print_str(e.suffix)} {print_str(e.whole)})"
    if isinstance(e, IntCmp):
        return f"({e.op} {print_int(e.left)} {print_int(e.right)})"
    raise TypeError(e)


def print_script(s: Script) -> str:
    lines = []
    if s.logic:
        lines.append(f"(set-logic {s.logic})")
    for name, sort in s.declarations.items():
        lines.append(f"(declare-fun {quote_symbol(name)} () {sort})")
    for a in s.assertions:
        lines.append(f"(assert {print_bool(a)})")
    lines.append("(check-sat)")
    return "\n".join(lines) + "\n"
