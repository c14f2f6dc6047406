"""Flow encodings of run and derivation counts (corrected Verma-style).

Connectivity is expressed with distance variables: every state (nonterminal)
that carries flow must be reachable from the initial state (start symbol)
along used transitions (rules), witnessed by ``z_succ = z_pred + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .charset import CharPred
from .cfg import Cfg
from .formula import (
    FormulaBuilder, LinFormula, Sort, Var, conj, disj, eq, ge, implies, le, total,
)
from .sfa import Sfa, labels


@dataclass(frozen=True)
class FlowFormula:
    formula: LinFormula
    label_count_vars: dict[CharPred, str]
    transition_vars: tuple[str, ...]
    final_vars: dict[int, str]
    distance_vars: tuple[str, ...]


def automaton_flow_formula(a: Sfa, prefix: str = "") -> FlowFormula:
    """Formula over label counts ``c`` satisfiable iff some accepting run has those counts."""
    a._require_eps_free()
    b = FormulaBuilder(prefix)
    y = [b.var(f"y{i}", Sort.COUNT) for i in range(len(a.transitions))]
    finals = sorted(a.finals)
    e = {q: b.var(f"e{q}", Sort.COUNT) for q in finals}
    z = [b.var(f"z{q}", Sort.DISTANCE) for q in a.states]

    b.add(eq(total(e.values()), 1))
    b.add(*(le(v, 1) for v in e.values()))

    incoming: list[list[int]] = [[] for _ in a.states]
    outgoing: list[list[int]] = [[] for _ in a.states]
    for i, (p, _, q) in enumerate(a.transitions):
        outgoing[p].append(i)
        incoming[q].append(i)

    for q in a.states:
        inflow = total([y[i] for i in incoming[q]] + [1 if q == a.initial else 0])
        outflow = total([y[i] for i in outgoing[q]] + ([e[q]] if q in e else []))
        b.add(eq(inflow, outflow))

    n = a.num_states
    for q in a.states:
        b.add(le(z[q], n))
        if q == a.initial:
            b.add(eq(z[q], 1))
            continue
        witnesses = [conj(ge(y[i], 1), ge(z[a.transitions[i][0]], 1),
                          eq(z[q], z[a.transitions[i][0]] + 1))
                     for i in incoming[q]]
        b.add(disj(eq(z[q], 0), *witnesses))
        used = total([y[i] for i in outgoing[q]] + ([e[q]] if q in e else []))
        b.add(implies(ge(used, 1), ge(z[q], 1)))

    label_vars: dict[CharPred, str] = {}
    by_label: dict[CharPred, list[Var]] = {g: [] for g in labels(a)}
    for i, (_, g, _) in enumerate(a.transitions):
        by_label[g].append(y[i])
    for k, (g, ys) in enumerate(by_label.items()):
        c = b.var(f"c{k}", Sort.COUNT)
        label_vars[g] = c.name
        b.add(eq(c, total(ys)))

    return FlowFormula(b.build(), label_vars, tuple(v.name for v in y),
                       {q: v.name for q, v in e.items()}, tuple(v.name for v in z))


def rule_var(i: int, prefix: str = "") -> str:
    return f"{prefix}n{i}"


def cfg_count_formula(g: Cfg, prefix: str = "") -> LinFormula:
    """Formula over rule counts ``{prefix}n<i>`` satisfiable iff a derivation uses them."""
    b = FormulaBuilder(prefix)
    n = [b.var(f"n{i}", Sort.COUNT) for i in range(len(g.rules))]
    nts = g.nonterminals
    z = {A: b.var(f"z[{A}]", Sort.DISTANCE) for A in nts}

    for B in nts:
        expanded = total(n[i] for i, (lhs, _) in enumerate(g.rules) if lhs == B)
        introduced = total(n[i] * rhs.count(B) for i, (_, rhs) in enumerate(g.rules) if B in rhs)
        b.add(eq(expanded, introduced + (1 if B == g.start else 0)))

    for B in nts:
        b.add(le(z[B], len(nts)))
        if B == g.start:
            b.add(eq(z[B], 1))
            continue
        witnesses = [conj(ge(n[i], 1), ge(z[lhs], 1), eq(z[B], z[lhs] + 1))
                     for i, (lhs, rhs) in enumerate(g.rules) if B in rhs]
        b.add(disj(eq(z[B], 0), *witnesses))
        expanded = total(n[i] for i, (lhs, _) in enumerate(g.rules) if lhs == B)
        b.add(implies(ge(expanded, 1), ge(z[B], 1)))
    return b.build()


def letter_counts(g: Cfg, counts: list[int]) -> dict[int, int]:
    """Terminal occurrence counts implied by a rule-count vector."""
    out: dict[int, int] = {}
    for k, (_, rhs) in zip(counts, g.rules):
        for s in rhs:
            if isinstance(s, int):
                out[s] = out.get(s, 0) + k
    return out
