"""Parametric context-free grammars.

A production ``(A, alpha, guard)`` rewrites ``A`` into ``alpha``, a sequence
of nonterminals and local variables; each application picks fresh values for
the locals subject to the guard, which may also mention the grammar's global
parameters.  Parameters may additionally appear on right-hand sides, in which
case they denote one fixed character for the whole derivation.

Text format, one production per line (``#`` starts a comment)::

    params: x
    start: S
    S -> y S y' [y = 'a' and y' = 'a']
    S -> y z y' [y = 'a', z = 'c', y' = 'a']
    T -> eps

Nonterminals are the names that occur on some left-hand side; names on a
right-hand side that are neither nonterminals nor parameters are locals.
Guards use ``and or not`` (also ``&& || ! ,``), comparisons ``= != < <= > >=``,
``+ - *`` (by constants), integer and quoted character literals, and
membership ``y in {'a'..'z', '_'}``.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .cfg import Cfg
from .charset import CharPred
from .errors import InstantiationBlowup, ParseError
from .formula import (
    TRUE, Const, Formula, FormulaBuilder, LinFormula, Sort, Term, Var, _subst_formula,
    add, conj, disj, eq, eval_formula, free_vars, ge, gt, implies, ite, le, lt, ne, neg,
    pred_holds, scale, total,
)

DEFAULT_INSTANTIATION_CAP = 10**5


@dataclass(frozen=True)
class Production:
    lhs: str
    rhs: tuple[str, ...]
    guard: Formula = TRUE
    locals: tuple[str, ...] = ()


@dataclass(frozen=True)
class ParamGrammar:
    params: tuple[str, ...]
    nonterminals: tuple[str, ...]
    start: str
    productions: tuple[Production, ...]

    def __post_init__(self):
        nts = set(self.nonterminals)
        if self.start not in nts:
            raise ValueError(f"start symbol {self.start!r} is not a nonterminal")
        params = set(self.params)
        if params & nts:
            raise ValueError("parameters and nonterminals overlap")
        for p in self.productions:
            if p.lhs not in nts:
                raise ValueError(f"unknown nonterminal {p.lhs!r}")
            scope = params | set(p.locals)
            for s in p.rhs:
                if s not in nts and s not in scope:
                    raise ValueError(f"rhs symbol {s!r} of {p.lhs} is not declared")
            extra = free_vars(p.guard) - scope
            if extra:
                raise ValueError(f"guard of {p.lhs} mentions undeclared {sorted(extra)}")

    @property
    def max_rhs(self) -> int:
        return max((len(p.rhs) for p in self.productions), default=0)

    def is_nonterminal(self, s: str) -> bool:
        return s in self.nonterminals

    def char_params(self) -> set[str]:
        """Parameters that occur on some right-hand side."""
        return {s for p in self.productions for s in p.rhs if s in self.params}


def make_grammar(productions: Sequence[tuple[str, Sequence[str], Formula] | tuple[str, Sequence[str]]],
                 params: Sequence[str] = (), start: str | None = None) -> ParamGrammar:
    """Build a grammar inferring nonterminals (lhs names) and per-production locals."""
    nts: list[str] = []
    for prod in productions:
        if prod[0] not in nts:
            nts.append(prod[0])
    prods = []
    for prod in productions:
        lhs, rhs = prod[0], tuple(prod[1])
        guard = prod[2] if len(prod) > 2 else TRUE
        locs: list[str] = []
        for s in rhs:
            if s not in nts and s not in params and s not in locs:
                locs.append(s)
        for v in sorted(free_vars(guard)):
            if v not in params and v not in locs:
                locs.append(v)
        prods.append(Production(lhs, rhs, guard, tuple(locs)))
    return ParamGrammar(tuple(params), tuple(nts), start or nts[0], tuple(prods))


# -- guard / grammar text parsing --------------------------------------------

_GTOK = re.compile(r"""
    \s*(?:
      (?P<char>'(?:[^'\\]|\\.)')
    | (?P<num>\d+)
    | (?P<op>\.\.|<=|>=|==|!=|&&|\|\||[-+*(){}=<>!,])
    | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
    )""", re.VERBOSE)

_CMPS = {"=": eq, "==": eq, "!=": ne, "<": lt, "<=": le, ">": gt, ">=": ge}


class _GuardParser:
    def __init__(self, text: str, line: int = 0):
        self.text = text
        self.line = line
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _GTOK.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"bad guard syntax near {text[pos:]!r}", line, pos + 1)
            kind = m.lastgroup
            self.toks.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self) -> str | None:
        return self.toks[self.i][1] if self.i < len(self.toks) else None

    def take(self, expected: str | None = None) -> tuple[str, str, int]:
        if self.i >= len(self.toks):
            raise ParseError(f"unexpected end of guard {self.text!r}", self.line, len(self.text))
        tok = self.toks[self.i]
        if expected is not None and tok[1] != expected:
            raise ParseError(f"expected {expected!r}, found {tok[1]!r}", self.line, tok[2] + 1)
        self.i += 1
        return tok

    def parse(self) -> Formula:
        f = self.disj()
        if self.i != len(self.toks):
            tok = self.toks[self.i]
            raise ParseError(f"trailing input {tok[1]!r} in guard", self.line, tok[2] + 1)
        return f

    def disj(self) -> Formula:
        parts = [self.conj()]
        while self.peek() in ("or", "||"):
            self.take()
            parts.append(self.conj())
        return disj(*parts)

    def conj(self) -> Formula:
        parts = [self.negation()]
        while self.peek() in ("and", "&&", ","):
            self.take()
            parts.append(self.negation())
        return conj(*parts)

    def negation(self) -> Formula:
        if self.peek() in ("not", "!"):
            self.take()
            return neg(self.negation())
        return self.atom()

    def atom(self) -> Formula:
        tok = self.peek()
        if tok == "true":
            self.take()
            return TRUE
        if tok == "false":
            self.take()
            return neg(TRUE)
        if tok == "(":
            save = self.i
            try:
                return self.comparison()
            except ParseError:
                self.i = save
            self.take("(")
            f = self.disj()
            self.take(")")
            return f
        return self.comparison()

    def comparison(self) -> Formula:
        lhs = self.sum()
        op = self.peek()
        if op == "in":
            self.take()
            return pred_holds(self.charset(), lhs)
        if op not in _CMPS:
            kind, text, pos = self.toks[self.i] if self.i < len(self.toks) else ("", "", len(self.text))
            raise ParseError(f"expected comparison, found {text!r}", self.line, pos + 1)
        self.take()
        return _CMPS[op](lhs, self.sum())

    def charset(self) -> CharPred:
        items = []
        if self.peek() == "{":
            self.take()
            items.append(self.char_item())
            while self.peek() == ",":
                self.take()
                items.append(self.char_item())
            self.take("}")
        else:
            items.append(self.char_item())
        return CharPred.of(items)

    def char_item(self) -> tuple[int, int]:
        lo = self.char_value()
        if self.peek() == "..":
            self.take()
            return lo, self.char_value()
        return lo, lo

    def char_value(self) -> int:
        kind, text, pos = self.take()
        if kind == "char":
            return _char_literal(text)
        if kind == "num":
            return int(text)
        raise ParseError(f"expected a character, found {text!r}", self.line, pos + 1)

    def sum(self) -> Term:
        t = self.product()
        while self.peek() in ("+", "-"):
            op = self.take()[1]
            rhs = self.product()
            t = add(t, rhs) if op == "+" else add(t, scale(-1, rhs))
        return t

    def product(self) -> Term:
        t = self.unary()
        while self.peek() == "*":
            _, _, pos = self.take()
            rhs = self.unary()
            if isinstance(t, Const):
                t = scale(t.value, rhs)
            elif isinstance(rhs, Const):
                t = scale(rhs.value, t)
            else:
                raise ParseError("nonlinear multiplication in guard", self.line, pos + 1)
        return t

    def unary(self) -> Term:
        kind, text, pos = self.take()
        if text == "-":
            return scale(-1, self.unary())
        if text == "(":
            t = self.sum()
            self.take(")")
            return t
        if kind == "num":
            return Const(int(text))
        if kind == "char":
            return Const(_char_literal(text))
        if kind == "name" and text not in ("and", "or", "not", "in", "true", "false"):
            return Var(text)
        raise ParseError(f"unexpected {text!r} in guard", self.line, pos + 1)


def _char_literal(text: str) -> int:
    body = text[1:-1]
    if body.startswith("\\"):
        body = {"\\n": "\n", "\\t": "\t", "\\'": "'", "\\\\": "\\"}.get(body, body[1:])
    return ord(body)


def parse_guard(text: str, line: int = 0) -> Formula:
    return _GuardParser(text, line).parse()


def parse_grammar(text: str) -> ParamGrammar:
    params: list[str] = []
    start = None
    raw: list[tuple[str, list[str], Formula]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("params:"):
            params.extend(line[len("params:"):].replace(",", " ").split())
            continue
        if line.startswith("start:"):
            start = line[len("start:"):].strip()
            continue
        if "->" not in line:
            raise ParseError("expected 'A -> ...'", lineno, 1)
        lhs, rest = line.split("->", 1)
        lhs = lhs.strip()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", lhs):
            raise ParseError(f"bad nonterminal {lhs!r}", lineno, 1)
        for alt in _split_alternatives(rest):
            guard: Formula = TRUE
            if "[" in alt:
                body, g = alt.split("[", 1)
                if not g.rstrip().endswith("]"):
                    raise ParseError("unterminated guard", lineno, line.index("[") + 1)
                guard = parse_guard(g.rstrip()[:-1], lineno)
            else:
                body = alt
            syms = [s for s in body.split() if s not in ("eps", "ε")]
            for s in syms:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", s):
                    raise ParseError(f"bad symbol {s!r}", lineno, 1)
            raw.append((lhs, syms, guard))
    if not raw:
        raise ParseError("grammar has no productions", 1, 1)
    return make_grammar(raw, params, start)


def _split_alternatives(rest: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in rest:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "|" and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


def format_guard(f: Formula) -> str:
    from .solver import formula_to_smt2
    return formula_to_smt2(f)


# -- nonemptiness ------------------------------------------------------------


def _param_vars(g: ParamGrammar, b: FormulaBuilder) -> dict[str, Var]:
    chars = g.char_params()
    return {x: b.var(f"param.{x}", Sort.CHAR if x in chars else Sort.INT) for x in g.params}


def _instantiate_guard(p: Production, params: Mapping[str, Term], locs: Sequence[Term]) -> Formula:
    binding = dict(params)
    binding.update(zip(p.locals, locs))
    return _subst_formula(p.guard, binding)


def nonempty_formula(g: ParamGrammar, prefix: str = "") -> LinFormula:
    """Satisfiable iff some parameter valuation makes the language nonempty.

    Guesses an ordered set of nonterminals rooted at the start symbol, each
    with one production whose nonterminals all come later in the order and
    whose guard holds for some fresh local values.
    """
    b = FormulaBuilder(prefix)
    X = _param_vars(g, b)
    use = {A: b.var(f"use[{A}]", Sort.COUNT) for A in g.nonterminals}
    order = {A: b.var(f"ord[{A}]", Sort.DISTANCE) for A in g.nonterminals}
    b.add(eq(use[g.start], 1))
    for A in g.nonterminals:
        b.add(le(use[A], 1))
        width = max((len(p.locals) for p in g.productions if p.lhs == A), default=0)
        Y = [b.var(f"loc[{A}].{k}", Sort.CHAR) for k in range(width)]
        options = []
        for p in g.productions:
            if p.lhs != A:
                continue
            later = [conj(eq(use[B], 1), gt(order[B], order[A])) for B in p.rhs if B in use]
            options.append(conj(_instantiate_guard(p, X, Y), *later))
        b.add(implies(eq(use[A], 1), disj(*options)))
    return b.build()


# -- finite instantiation ----------------------------------------------------


def instantiate_finite(g: ParamGrammar, params: Mapping[str, int], domain: Sequence[int],
                       cap: int = DEFAULT_INSTANTIATION_CAP) -> Cfg:
    """Plain CFG of all guard-satisfying instantiations with locals over ``domain``."""
    if not domain:
        raise ValueError("domain must be nonempty")
    rules = []
    for p in g.productions:
        count = len(domain) ** len(p.locals)
        if count > cap:
            raise InstantiationBlowup(
                f"{p.lhs} -> {' '.join(p.rhs)} needs {count} instantiations (cap {cap})")
        for values in itertools.product(domain, repeat=len(p.locals)):
            env = dict(params)
            env.update(zip(p.locals, values))
            if not eval_formula(p.guard, env):
                continue
            rhs = tuple(s if g.is_nonterminal(s) else env[s] for s in p.rhs)
            rules.append((p.lhs, rhs))
    return Cfg.make(g.start, rules)


# -- Parikh image ------------------------------------------------------------


@dataclass
class GrammarOpts:
    """``slots`` overrides the number of guessed mappings (None = proven bound)."""

    slots: int | None = None
    outputs: Sequence[str] | None = None
    extra: dict = field(default_factory=dict)


def mapping_domain_size(g: ParamGrammar, n: int) -> int:
    return n + 2 * len(g.nonterminals)


def default_slot_count(g: ParamGrammar, n: int) -> int:
    d = mapping_domain_size(g, n)
    ell = g.max_rhs
    return len(g.nonterminals) + max(1, math.ceil(2 * d * math.log2(max(d * ell, 2))))


def output_vars(n: int, prefix: str = "") -> list[str]:
    return [f"{prefix}x{i + 1}" for i in range(n)]


def grammar_parikh_formula(g: ParamGrammar, preds: Sequence[CharPred],
                           opts: GrammarOpts | None = None, prefix: str = "") -> LinFormula:
    """Formula over counts ``x1..xn`` satisfiable iff they are a Parikh vector of L(g).

    Guesses K mappings, each an instantiated production with a multiplicity.
    The weighted source/target nonterminal counts must satisfy the Euler
    balance, used nonterminals must be reachable from the start symbol, and
    ``x_i`` sums each slot's count of right-hand-side characters in ``psi_i``.
    """
    if not preds:
        raise ValueError("need at least one output predicate")
    opts = opts or GrammarOpts()
    n = len(preds)
    K = opts.slots if opts.slots is not None else default_slot_count(g, n)
    b = FormulaBuilder(prefix)
    X = _param_vars(g, b)
    names = list(opts.outputs) if opts.outputs is not None else output_vars(n, prefix)
    x = [b.declare(v, Sort.COUNT) for v in names]
    P = g.productions
    width = max((len(p.locals) for p in P), default=0)
    nts = g.nonterminals

    contrib: list[list[Var]] = [[] for _ in range(n)]
    source: dict[str, list[Term]] = {A: [] for A in nts}
    target: dict[str, list[Term]] = {A: [] for A in nts}
    edges: dict[str, list[tuple[Var, str]]] = {A: [] for A in nts}

    prev: tuple[Var, Var] | None = None
    for j in range(K):
        m = b.var(f"s{j}.m", Sort.COUNT)
        sel = b.var(f"s{j}.sel", Sort.INT)
        if prev is not None:
            # slots form a multiset: used slots first, ordered by production
            b.add(implies(eq(prev[0], 0), eq(m, 0)),
                  implies(ge(m, 1), le(prev[1], sel)))
        prev = (m, sel)
        Y = [b.var(f"s{j}.y{k}", Sort.CHAR) for k in range(width)]
        c = [b.var(f"s{j}.c{i + 1}", Sort.COUNT) for i in range(n)]
        b.add(ge(sel, 0), lt(sel, len(P)))
        for pi, p in enumerate(P):
            chosen = eq(sel, pi)
            w = b.var(f"s{j}.w{pi}", Sort.COUNT)
            b.add(implies(chosen, eq(w, m)), implies(neg(chosen), eq(w, 0)))
            local = dict(zip(p.locals, Y))
            b.add(implies(conj(chosen, ge(m, 1)), _instantiate_guard(p, X, Y)))
            values = [local[s] if s in local else X[s] for s in p.rhs if not g.is_nonterminal(s)]
            for i, psi in enumerate(preds):
                b.add(implies(chosen, eq(c[i], total(ite(pred_holds(psi, v), m, 0) for v in values))))
            source[p.lhs].append(w)
            for B in set(p.rhs):
                if g.is_nonterminal(B):
                    target[B].append(scale(p.rhs.count(B), w))
                    edges[B].append((w, p.lhs))
        for i in range(n):
            contrib[i].append(c[i])

    for A in nts:
        b.add(eq(total(source[A]), add(total(target[A]), 1 if A == g.start else 0)))

    z = {A: b.var(f"z[{A}]", Sort.DISTANCE) for A in nts}
    for A in nts:
        b.add(le(z[A], len(nts)))
        if A == g.start:
            b.add(eq(z[A], 1))
            continue
        witnesses = [conj(ge(w, 1), ge(z[src], 1), eq(z[A], z[src] + 1)) for w, src in edges[A]]
        b.add(disj(eq(z[A], 0), *witnesses))
        b.add(implies(ge(total(source[A]), 1), ge(z[A], 1)))

    for i in range(n):
        b.add(eq(x[i], total(contrib[i])))
    return b.build()
