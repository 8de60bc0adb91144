"""Sound inference rules over interval-probability sentences.

Each rule is a pure function from premise sentences to one conclusion.
Arithmetic is exact; endpoints are clamped only where the rule itself takes
a ``max(0, ...)`` or ``min(1, ...)``.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Sequence

from .formula import And, Implies, Not, Or, canonical_key, conjuncts, format_formula
from .interval import ProbInterval, intersect
from .kb import Sentence

__all__ = [
    "RuleId",
    "RuleError",
    "negation_rule",
    "conjunction_rule",
    "implication_rule",
    "horn_rule",
    "multiple_derivation",
    "disjunction_rule",
    "apply_rule",
]


class RuleId(enum.Enum):
    NEGATION = "negation"
    CONJUNCTION = "conjunction"
    IMPLICATION = "implication"
    HORN = "horn"
    MULTIPLE_DERIVATION = "multiple-derivation"
    DISJUNCTION_DERIVED = "disjunction-derived"

    def __str__(self) -> str:
        return self.value


class RuleError(ValueError):
    """Premises do not have the shape the rule requires."""


def _check(*sentences: Sentence) -> None:
    for s in sentences:
        if s.interval.is_empty:
            raise RuleError(f"premise P({format_formula(s.formula)}) has an empty interval")


def negation_rule(s: Sentence) -> Sentence:
    """``P(A) in [x, y]`` gives ``P(!A) in [1-y, 1-x]``.

    Works in reverse too: a premise ``!A`` concludes ``A``.
    """
    _check(s)
    f = s.formula.child if isinstance(s.formula, Not) else Not(s.formula)
    x, y = s.interval.lo, s.interval.hi
    return Sentence(f, ProbInterval(1 - y, 1 - x), origin=RuleId.NEGATION.value)


def conjunction_rule(s1: Sentence, s2: Sentence) -> Sentence:
    """Fréchet bounds: ``[max(0, x+u-1), min(y, v)]`` for ``A & B``."""
    _check(s1, s2)
    x, y = s1.interval.lo, s1.interval.hi
    u, v = s2.interval.lo, s2.interval.hi
    return Sentence(
        And(s1.formula, s2.formula),
        ProbInterval(max(Fraction(0), x + u - 1), min(y, v)),
        origin=RuleId.CONJUNCTION.value,
    )


def implication_rule(s_a: Sentence, s_imp: Sentence) -> Sentence:
    """From ``P(A) in [x, y]`` and ``P(A -> B) in [u, v]`` infer ``P(B) in [max(0, x+u-1), v]``."""
    _check(s_a, s_imp)
    f = s_imp.formula
    if not isinstance(f, Implies):
        raise RuleError(f"not an implication: {format_formula(f)}")
    if canonical_key(f.antecedent) != canonical_key(s_a.formula):
        raise RuleError(
            f"antecedent {format_formula(f.antecedent)} does not match {format_formula(s_a.formula)}"
        )
    x = s_a.interval.lo
    u, v = s_imp.interval.lo, s_imp.interval.hi
    return Sentence(f.consequent, ProbInterval(max(Fraction(0), x + u - 1), v),
                    origin=RuleId.IMPLICATION.value)


def _match_premises(antecedents, premises: Sequence[Sentence]) -> list[Sentence]:
    # Multiset match by canonical key; result follows antecedent order.
    pool = list(premises)
    ordered = []
    for a in antecedents:
        key = canonical_key(a)
        for i, s in enumerate(pool):
            if canonical_key(s.formula) == key:
                ordered.append(pool.pop(i))
                break
        else:
            raise RuleError(f"no premise for antecedent conjunct {format_formula(a)}")
    return ordered


def horn_rule(s_imp: Sentence, premises: Sequence[Sentence]) -> Sentence:
    """Propagate across ``A1 & ... & An -> B``.

    With the clause in ``[x, y]`` and premise lower bounds ``u_i`` the
    conclusion is ``P(B) in [max(0, x + sum(u_i) - n), y]``. The antecedent
    may be associated either way; premises may come in any order.
    """
    _check(s_imp, *premises)
    f = s_imp.formula
    if not isinstance(f, Implies):
        raise RuleError(f"not an implication: {format_formula(f)}")
    ante = conjuncts(f.antecedent)
    if len(ante) != len(premises):
        raise RuleError(f"clause has {len(ante)} antecedent conjuncts, got {len(premises)} premises")
    ordered = _match_premises(ante, premises)
    n = len(ante)
    x, y = s_imp.interval.lo, s_imp.interval.hi
    lo = max(Fraction(0), x + sum(s.interval.lo for s in ordered) - n)
    return Sentence(f.consequent, ProbInterval(lo, y), origin=RuleId.HORN.value)


def multiple_derivation(s1: Sentence, s2: Sentence) -> Sentence:
    """Intersect two intervals for the same formula; EMPTY means the premises clash."""
    if canonical_key(s1.formula) != canonical_key(s2.formula):
        raise RuleError(
            f"formulas differ: {format_formula(s1.formula)} vs {format_formula(s2.formula)}"
        )
    return Sentence(s1.formula, intersect(s1.interval, s2.interval),
                    origin=RuleId.MULTIPLE_DERIVATION.value)


def disjunction_rule(s1: Sentence, s2: Sentence) -> Sentence:
    """``[max(x, u), min(1, y+v)]`` for ``A | B``: negation, conjunction, negation."""
    _check(s1, s2)
    x, y = s1.interval.lo, s1.interval.hi
    u, v = s2.interval.lo, s2.interval.hi
    return Sentence(
        Or(s1.formula, s2.formula),
        ProbInterval(max(x, u), min(Fraction(1), y + v)),
        origin=RuleId.DISJUNCTION_DERIVED.value,
    )


def apply_rule(rule: RuleId, premises: Sequence[Sentence]) -> Sentence:
    """Apply ``rule`` to premises in the order a derivation trace records them.

    Horn premises are ``(clause, A1, ..., An)``; implication premises are
    ``(A, A -> B)``.
    """
    if rule is RuleId.NEGATION:
        (s,) = premises
        return negation_rule(s)
    if rule is RuleId.CONJUNCTION:
        return conjunction_rule(*premises)
    if rule is RuleId.IMPLICATION:
        return implication_rule(*premises)
    if rule is RuleId.HORN:
        return horn_rule(premises[0], premises[1:])
    if rule is RuleId.MULTIPLE_DERIVATION:
        return multiple_derivation(*premises)
    if rule is RuleId.DISJUNCTION_DERIVED:
        return disjunction_rule(*premises)
    raise ValueError(f"unknown rule {rule!r}")
