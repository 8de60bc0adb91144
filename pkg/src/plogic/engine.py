"""Anytime saturation over a finite formula universe.

The engine keeps a *current derived interval* for every formula in the
subformula closure of the knowledge base and target. It starts every formula
at [0, 1], folds in the KB by intersection and then applies every rule
instance in rounds, intersecting each conclusion into the belief map. Beliefs
only ever shrink, so the procedure can be stopped after any round and the
target's belief is still a sound bound.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Mapping, Sequence

from .formula import (
    And,
    Formula,
    Implies,
    Not,
    Or,
    canonical_key,
    conjuncts,
    join_keys,
    negate_key,
    order_key,
    subformulas,
)
from .interval import EMPTY, UNIT, ProbInterval, intersect, width
from .kb import KnowledgeBase, Sentence
from .rules import (
    RuleId,
    apply_rule,
    conjunction_rule,
    disjunction_rule,
    horn_rule,
    implication_rule,
    negation_rule,
)

__all__ = [
    "EngineLimits",
    "DerivationStep",
    "Universe",
    "BeliefState",
    "EngineResult",
    "init_state",
    "saturate_round",
    "iterate",
    "saturate",
    "run",
    "snapshot",
    "trace_for",
]


@dataclass(frozen=True)
class EngineLimits:
    """Termination control.

    A round counts as progress only if some belief narrows by more than
    ``min_improvement``; the default of 0 runs to the exact fixpoint.
    """

    max_rounds: int = 100
    min_improvement: Fraction = Fraction(0)
    snapshot_every: int | None = None

    def __post_init__(self) -> None:
        if self.max_rounds < 1:
            raise ValueError("max_rounds must be >= 1")
        if self.snapshot_every is not None and self.snapshot_every < 1:
            raise ValueError("snapshot_every must be >= 1")
        object.__setattr__(self, "min_improvement", Fraction(self.min_improvement))


@dataclass(frozen=True, eq=False)
class DerivationStep:
    """One rule application that narrowed a belief.

    ``supports[i]`` is the step that produced ``premises[i]`` (``None`` for
    KB sentences and vacuous [0, 1] beliefs). ``index`` orders steps within
    a run.
    """

    rule: RuleId
    premises: tuple[Sentence, ...]
    conclusion: Sentence
    round: int
    index: int
    supports: tuple["DerivationStep | None", ...] = field(default=(), repr=False)

    def replay(self) -> Sentence:
        return apply_rule(self.rule, self.premises)


@dataclass(frozen=True)
class _Instance:
    rule: RuleId
    premise_keys: tuple[Formula, ...]
    premise_forms: tuple[Formula, ...]
    conclusion_key: Formula


_APPLY: dict[RuleId, Callable[..., Sentence]] = {
    RuleId.NEGATION: negation_rule,
    RuleId.CONJUNCTION: conjunction_rule,
    RuleId.DISJUNCTION_DERIVED: disjunction_rule,
    RuleId.IMPLICATION: implication_rule,
    RuleId.HORN: lambda clause, *ps: horn_rule(clause, ps),
}


class Universe:
    """Finite set of formulas (by canonical key) plus every applicable rule instance."""

    def __init__(self, formulas: Sequence[Formula]):
        forms: dict[Formula, list[Formula]] = {}
        for f in formulas:
            for g in subformulas(f):
                for h in (g, g.child if isinstance(g, Not) else Not(g)):
                    bucket = forms.setdefault(canonical_key(h), [])
                    if h not in bucket:
                        bucket.append(h)
        self.keys: list[Formula] = sorted(forms, key=order_key)
        self.forms = forms
        self.rep: dict[Formula, Formula] = {k: v[0] for k, v in forms.items()}
        self.instances: list[_Instance] = self._compile()
        self.by_premise: dict[Formula, list[int]] = {k: [] for k in self.keys}
        for i, inst in enumerate(self.instances):
            for k in set(inst.premise_keys):
                self.by_premise[k].append(i)

    def __contains__(self, f: Formula) -> bool:
        return canonical_key(f) in self.forms

    def __len__(self) -> int:
        return len(self.keys)

    def _compile(self) -> list[_Instance]:
        keys, rep, out = self.keys, self.rep, []
        for k in keys:
            out.append(_Instance(RuleId.NEGATION, (k,), (rep[k],), negate_key(k)))
        for i, k1 in enumerate(keys):
            for k2 in keys[i:]:
                for kind, rule in ((And, RuleId.CONJUNCTION), (Or, RuleId.DISJUNCTION_DERIVED)):
                    ck = join_keys(kind, k1, k2)
                    if ck in self.forms:
                        out.append(_Instance(rule, (k1, k2), (rep[k1], rep[k2]), ck))
        for k in keys:
            for f in self.forms[k]:
                if not isinstance(f, Implies):
                    continue
                ck = canonical_key(f.consequent)
                ak = canonical_key(f.antecedent)
                out.append(_Instance(RuleId.IMPLICATION, (ak, k), (rep[ak], f), ck))
                parts = conjuncts(f.antecedent)
                if len(parts) > 1:
                    pks = tuple(canonical_key(p) for p in parts)
                    out.append(_Instance(
                        RuleId.HORN, (k, *pks), (f, *(rep[p] for p in pks)), ck
                    ))
        return out


@dataclass(frozen=True)
class BeliefState:
    universe: Universe
    beliefs: Mapping[Formula, ProbInterval]
    traces: Mapping[Formula, DerivationStep | None]
    round: int
    inconsistent: bool
    changed: frozenset = frozenset()
    steps: tuple[DerivationStep, ...] = ()
    limits: EngineLimits = EngineLimits()
    progress: bool = True

    def belief(self, f: Formula) -> ProbInterval:
        """Current derived interval for ``f``; ``KeyError`` outside the universe."""
        return self.beliefs[canonical_key(f)]


@dataclass(frozen=True)
class EngineResult:
    interval: ProbInterval
    consistent: bool
    rounds_used: int
    converged: bool
    snapshots: list[tuple[int, ProbInterval]]
    trace: list[DerivationStep]
    state: BeliefState = field(repr=False)


class _Folder:
    """Accumulates conclusions into a belief map and records trace steps."""

    def __init__(self, beliefs, traces, round_no: int, next_index: int):
        self.beliefs = dict(beliefs)
        self.traces = dict(traces)
        self.round = round_no
        self.index = next_index
        self.steps: list[DerivationStep] = []
        self.inconsistent = False

    def step(self, rule, premises, conclusion, supports) -> DerivationStep:
        s = DerivationStep(rule, tuple(premises), conclusion, self.round, self.index, tuple(supports))
        self.index += 1
        self.steps.append(s)
        return s

    def fold(self, key: Formula, derived: Sentence, source: DerivationStep | None) -> None:
        cur = self.beliefs[key]
        new = intersect(cur, derived.interval)
        if new == cur:
            return
        if new == derived.interval:
            self.traces[key] = source
        else:
            premise = Sentence(derived.formula, cur)
            self.traces[key] = self.step(
                RuleId.MULTIPLE_DERIVATION,
                (premise, derived),
                Sentence(derived.formula, new, origin=RuleId.MULTIPLE_DERIVATION.value),
                (self.traces[key], source),
            )
        self.beliefs[key] = new
        if new.is_empty:
            self.inconsistent = True


def init_state(kb: KnowledgeBase, target: Formula | None = None,
               limits: EngineLimits = EngineLimits()) -> BeliefState:
    """Universe of ``kb`` and ``target`` at [0, 1], with the KB folded in."""
    formulas = list(kb.formulas) + ([target] if target is not None else [])
    universe = Universe(formulas)
    folder = _Folder({k: UNIT for k in universe.keys}, {k: None for k in universe.keys}, 0, 0)
    for s in kb.sentences:
        folder.fold(canonical_key(s.formula), s, None)
        if folder.inconsistent:
            break
    return BeliefState(
        universe=universe,
        beliefs=folder.beliefs,
        traces=folder.traces,
        round=0,
        inconsistent=folder.inconsistent,
        changed=frozenset(universe.keys),
        steps=tuple(folder.steps),
        limits=limits,
    )


def saturate_round(state: BeliefState) -> tuple[BeliefState, bool]:
    """Apply every rule instance with a premise that changed last round.

    Premises are read from ``state``; conclusions are intersected into a
    fresh belief map. Stops early if some belief becomes empty.
    """
    if state.inconsistent:
        raise ValueError("state is already inconsistent")
    universe = state.universe
    old = state.beliefs
    active = sorted({i for k in state.changed for i in universe.by_premise[k]})
    folder = _Folder(old, state.traces,
                     state.round + 1, state.steps[-1].index + 1 if state.steps else 0)
    for i in active:
        inst = universe.instances[i]
        premises = [Sentence(f, old[k]) for f, k in zip(inst.premise_forms, inst.premise_keys)]
        derived = _APPLY[inst.rule](*premises)
        cur = folder.beliefs[inst.conclusion_key]
        if intersect(cur, derived.interval) == cur:
            continue
        step = folder.step(inst.rule, premises, derived, (state.traces[k] for k in inst.premise_keys))
        folder.fold(inst.conclusion_key, derived, step)
        if folder.inconsistent:
            break
    changed = frozenset(k for k in universe.keys if folder.beliefs[k] != old[k])
    progress = any(
        folder.beliefs[k].is_empty or width(old[k]) - width(folder.beliefs[k]) > state.limits.min_improvement
        for k in changed
    )
    new_state = BeliefState(
        universe=universe,
        beliefs=folder.beliefs,
        traces=folder.traces,
        round=state.round + 1,
        inconsistent=folder.inconsistent,
        changed=changed,
        steps=state.steps + tuple(folder.steps),
        limits=state.limits,
        progress=progress,
    )
    return new_state, progress


def iterate(kb: KnowledgeBase, target: Formula | None = None,
            limits: EngineLimits = EngineLimits()) -> Iterator[BeliefState]:
    """Yield the initial state and then the state after every round.

    Stops at a fixpoint (or a round without sufficient progress), on
    inconsistency, or after ``limits.max_rounds`` rounds. Every yielded state
    is a valid anytime answer.
    """
    state = init_state(kb, target, limits)
    yield state
    while not state.inconsistent and state.round < limits.max_rounds:
        state, progress = saturate_round(state)
        yield state
        if not progress:
            break


def saturate(kb: KnowledgeBase, limits: EngineLimits = EngineLimits()) -> BeliefState:
    """Run to completion without a target and return the final state."""
    state = None
    for state in iterate(kb, None, limits):
        pass
    return state


def snapshot(state: BeliefState, target: Formula) -> ProbInterval:
    """Current derived interval for ``target``.

    EMPTY once the state is inconsistent; [0, 1] with a warning for a
    formula outside the universe.
    """
    if state.inconsistent:
        return EMPTY
    key = canonical_key(target)
    if key not in state.beliefs:
        warnings.warn(f"{target} is outside the formula universe; reporting [0, 1]", stacklevel=2)
        return UNIT
    return state.beliefs[key]


def trace_for(state: BeliefState, target: Formula) -> list[DerivationStep]:
    """Steps reachable from the best derivation of ``target``, in derivation order."""
    key = canonical_key(target)
    if state.inconsistent:
        roots = [s for s in state.steps if s.conclusion.interval.is_empty][:1]
    else:
        roots = [state.traces.get(key)]
    seen: dict[int, DerivationStep] = {}
    stack = [r for r in roots if r is not None]
    while stack:
        s = stack.pop()
        if s.index in seen:
            continue
        seen[s.index] = s
        stack.extend(p for p in s.supports if p is not None)
    return [seen[i] for i in sorted(seen)]


def run(kb: KnowledgeBase, target: Formula, limits: EngineLimits = EngineLimits(),
        on_snapshot: Callable[[int, ProbInterval], None] | None = None) -> EngineResult:
    """Saturate and report the target's interval.

    With ``limits.snapshot_every = k`` the target's interval is recorded
    after initialisation, every ``k`` rounds and at the end; ``on_snapshot``
    sees each record as it is made.
    """
    snaps: list[tuple[int, ProbInterval]] = []

    def record(st: BeliefState) -> None:
        if snaps and snaps[-1][0] == st.round:
            return
        item = (st.round, snapshot(st, target))
        snaps.append(item)
        if on_snapshot is not None:
            on_snapshot(*item)

    state = None
    for state in iterate(kb, target, limits):
        if limits.snapshot_every is not None and state.round % limits.snapshot_every == 0:
            record(state)
    converged = state.inconsistent or not state.progress
    if limits.snapshot_every is not None:
        record(state)
    return EngineResult(
        interval=snapshot(state, target),
        consistent=not state.inconsistent,
        rounds_used=state.round,
        converged=converged,
        snapshots=snaps,
        trace=trace_for(state, target),
        state=state,
    )
