"""Interval-valued probabilistic logic: anytime rule-based deduction and exact entailment."""

from .engine import EngineLimits, EngineResult, init_state, iterate, run, saturate_round, snapshot
from .formula import ParseError, canonical_key, evaluate, format_formula, parse_formula
from .interval import EMPTY, UNIT, ProbInterval, contains, intersect, make_interval, width
from .kb import KnowledgeBase, Sentence, load_kb, parse_kb, validate
from .oracle import AtomCapExceeded, entailed_interval, is_consistent
from .rules import RuleId

__all__ = [
    "EMPTY",
    "UNIT",
    "AtomCapExceeded",
    "EngineLimits",
    "EngineResult",
    "KnowledgeBase",
    "ParseError",
    "ProbInterval",
    "RuleId",
    "Sentence",
    "canonical_key",
    "contains",
    "entailed_interval",
    "evaluate",
    "format_formula",
    "init_state",
    "intersect",
    "is_consistent",
    "iterate",
    "load_kb",
    "make_interval",
    "parse_formula",
    "parse_kb",
    "run",
    "saturate_round",
    "snapshot",
    "validate",
    "width",
]

__version__ = "0.1.0"
