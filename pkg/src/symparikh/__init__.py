"""Symbolic Parikh images of automata and parametric grammars, applied to
overapproximate satisfiability of SMT-LIB string constraints."""

from .abstraction import Mode, abstract_script, select_predicates, to_nnf
from .charset import CharPred, minterms, pred_complement, pred_inter, pred_union
from .errors import (
    ComplementBlowup, FuelExhausted, InstantiationBlowup, ParseError, PushTooLong,
    SolverError, SolverTimeout, SymParikhError, UnsupportedFeature,
)
from .formula import LinFormula, Sort, evaluate
from .grammar import ParamGrammar, grammar_parikh_formula, nonempty_formula, parse_grammar
from .pipeline import Verdict, check_script
from .regex import compile_regex
from .sfa import Sfa
from .smtlib import parse_script, print_script
from .solver import emit_smt2, solve
from .symbolic import EncodeOpts, any_parikh, build_phi_regex

__version__ = "0.1.0"

__all__ = [
    "CharPred", "ComplementBlowup", "EncodeOpts", "FuelExhausted", "InstantiationBlowup",
    "LinFormula", "Mode", "ParamGrammar", "ParseError", "PushTooLong", "Sfa", "SolverError",
    "SolverTimeout", "Sort", "SymParikhError", "UnsupportedFeature", "Verdict",
    "abstract_script", "any_parikh", "build_phi_regex", "check_script", "compile_regex",
    "emit_smt2", "evaluate", "grammar_parikh_formula", "minterms", "nonempty_formula",
    "parse_grammar", "parse_script", "pred_complement", "pred_inter", "pred_union",
    "print_script", "select_predicates", "solve", "to_nnf",
]
