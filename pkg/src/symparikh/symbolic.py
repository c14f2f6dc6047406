"""Symbolic Parikh images of symbolic automata.

For each transition label the encoding guesses a handful of representative
characters together with how many label-transitions each one accounts for.
Output count ``x_i`` is then the number of guessed characters satisfying
``psi_i``, weighted by their counts.  Two optional refinements shrink the
search: buckets (a tighter bound on how many representatives a label needs)
and symmetry breaking (canonical ordering of the representatives).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .charset import CharPred, pred_complement, pred_inter, pred_is_empty
from .formula import (
    FormulaBuilder, LinFormula, Sort, Var, disj, eq, implies, ite, lt, neg, pred_holds, total,
)
from .parikh_core import automaton_flow_formula
from .sfa import Sfa, labels


@dataclass(frozen=True)
class Bucket:
    """Output predicates that are pairwise disjoint underneath one label."""

    members: tuple[CharPred, ...]


@dataclass(frozen=True)
class EncodeOpts:
    """Encoding switches.

    ``char_var_cap`` limits the representatives per label (None: no limit);
    ``extra_char_vars`` adds representatives beyond the computed bound and
    exists to test that the bound is sufficient.
    """

    use_buckets: bool = True
    use_symmetry: bool = True
    char_var_cap: int | None = None
    extra_char_vars: int = 0

    def __post_init__(self):
        if self.char_var_cap is not None and self.char_var_cap < 1:
            raise ValueError("char_var_cap must be at least 1")
        if self.extra_char_vars < 0:
            raise ValueError("extra_char_vars must be nonnegative")


def raw_char_bound(n: int) -> int:
    """``2 n log n`` with base 2, rounded up; n = 1 gets 2, since one predicate
    still splits a label into characters inside and outside it."""
    return max(1, math.ceil(2 * n * math.log2(max(n, 2))))


def compute_buckets(label: CharPred, preds: Sequence[CharPred]) -> list[Bucket]:
    """Greedy first-fit: a predicate joins the first bucket it is disjoint from under ``label``."""
    if not preds:
        raise ValueError("need at least one predicate")
    groups: list[list[CharPred]] = []
    for psi in preds:
        under = pred_inter(label, psi)
        for g in groups:
            if all(pred_is_empty(pred_inter(under, other)) for other in g):
                g.append(psi)
                break
        else:
            groups.append([psi])
    return [Bucket(tuple(g)) for g in groups]


def _bucket_choices(label: CharPred, bucket: Bucket) -> int:
    rest = label
    for psi in bucket.members:
        rest = pred_inter(rest, pred_complement(psi))
    return len(bucket.members) + (0 if pred_is_empty(rest) else 1)


def char_count_bound(label: CharPred, buckets: Sequence[Bucket], n: int) -> int:
    """Number of distinct predicate profiles a label can exhibit, capped by ``2 n log n``."""
    product = 1
    for b in buckets:
        product *= _bucket_choices(label, b)
    return min(product, raw_char_bound(n))


def chars_for_label(label: CharPred, preds: Sequence[CharPred], opts: EncodeOpts) -> int:
    n = len(preds)
    if opts.use_buckets:
        c = char_count_bound(label, compute_buckets(label, preds), n)
    else:
        c = raw_char_bound(n)
    if opts.char_var_cap is not None:
        c = min(c, opts.char_var_cap)
    return c + opts.extra_char_vars


def output_names(n: int, prefix: str = "") -> list[str]:
    return [f"{prefix}x{i + 1}" for i in range(n)]


def build_phi_regex(a: Sfa, preds: Sequence[CharPred], opts: EncodeOpts | None = None,
                    prefix: str = "", outputs: Sequence[str] | None = None) -> LinFormula:
    """Formula over ``x1..xn`` (or ``outputs``) satisfiable iff they are the
    ``preds``-counts of some word accepted by ``a``."""
    if not preds:
        raise ValueError("need at least one predicate")
    opts = opts or EncodeOpts()
    n = len(preds)
    names = list(outputs) if outputs is not None else output_names(n, prefix)
    if len(names) != n:
        raise ValueError("one output name per predicate required")
    b = FormulaBuilder(prefix)
    flow = automaton_flow_formula(a, prefix)
    b.add(b.include(flow.formula))
    x = [b.declare(v, Sort.COUNT) for v in names]
    split: list[list[Var]] = [[] for _ in range(n)]

    for k, lab in enumerate(labels(a)):
        c_lab = Var(flow.label_count_vars[lab])
        C = chars_for_label(lab, preds, opts)
        chi = [b.var(f"l{k}.chr{j}", Sort.CHAR) for j in range(C)]
        kappa = [b.var(f"l{k}.cnt{j}", Sort.COUNT) for j in range(C)]
        b.add(eq(c_lab, total(kappa)))
        b.add(*(pred_holds(lab, ch) for ch in chi))
        for i, psi in enumerate(preds):
            s = b.var(f"l{k}.s{i + 1}", Sort.COUNT)
            b.add(eq(s, total(ite(pred_holds(psi, chi[j]), kappa[j], 0) for j in range(C))))
            split[i].append(s)
        if opts.use_symmetry:
            for j in range(C - 1):
                b.add(
                    disj(eq(kappa[j + 1], 0) & eq(chi[j], chi[j + 1]), lt(chi[j], chi[j + 1])),
                    disj(eq(kappa[j + 1], 0),
                         *(_differs(psi, chi[j], chi[j + 1])
                           for psi in preds if not psi.is_top())),
                    implies(eq(kappa[j], 0), eq(kappa[j + 1], 0)),
                )

    for i in range(n):
        b.add(eq(x[i], total(split[i])))
    return b.build()


def _differs(psi: CharPred, u: Var, v: Var):
    hu, hv = pred_holds(psi, u), pred_holds(psi, v)
    return disj(hu & neg(hv), neg(hu) & hv)


def phi_regex_var_count(a: Sfa, preds: Sequence[CharPred], opts: EncodeOpts | None = None) -> int:
    """Closed-form variable count of :func:`build_phi_regex`.

    Flow part: one count per transition, one indicator per final state, one
    distance per state, one count per label.  Per label: C characters, C
    counts and n split counts.  Plus the n outputs.
    """
    opts = opts or EncodeOpts()
    n = len(preds)
    labs = labels(a)
    flow = len(a.transitions) + len(a.finals) + a.num_states + len(labs)
    per_label = sum(2 * chars_for_label(lab, preds, opts) + n for lab in labs)
    return flow + per_label + n


def any_parikh(preds: Sequence[CharPred], opts: EncodeOpts | None = None, prefix: str = "",
               outputs: Sequence[str] | None = None) -> LinFormula:
    """Counts realizable by some word at all."""
    return build_phi_regex(Sfa.universal(), preds, opts, prefix, outputs)
