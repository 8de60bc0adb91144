import random
from fractions import Fraction as F

import pytest

from plogic.engine import (
    EngineLimits,
    init_state,
    iterate,
    run,
    saturate,
    saturate_round,
    snapshot,
)
from plogic.formula import Atom, canonical_key, parse_formula
from plogic.interval import EMPTY, UNIT, contains, make_interval
from plogic.kb import KnowledgeBase, parse_kb
from plogic.oracle import entailed_interval, is_consistent
from plogic.rules import RuleId

from _gen import random_formula, random_kb

EX6 = parse_kb("""
P(A & B -> C) in [0.8, 0.9]
P(A) in [0.7, 0.8]
P(B) in [0.8, 1]
P(D -> C) in [0.7, 0.8]
P(D) in [0.5, 0.7]
""")
CLASH = parse_kb("P(A) in [0.8, 0.9]\nP(!A) in [0.8, 0.9]")
C = Atom("C")


def iv(lo, hi):
    return make_interval(F(lo), F(hi))


def test_init_state():
    st = init_state(EX6, C)
    assert st.belief(C) == UNIT
    assert st.belief(Atom("A")) == iv("7/10", "4/5")
    assert st.round == 0 and not st.inconsistent
    assert snapshot(st, C) == UNIT
    assert init_state(KnowledgeBase(), Atom("A")).belief(Atom("A")) == UNIT
    dup = parse_kb("P(A) in [0.8, 0.9]\nP(A) in [0.1, 0.2]")
    assert init_state(dup, Atom("A")).inconsistent


def test_universe_is_closure_with_negations():
    st = init_state(parse_kb("P(A & B) in [0.5, 1]"), None)
    keys = set(st.beliefs)
    expected = {canonical_key(parse_formula(t)) for t in ["A & B", "A", "B", "!(A & B)", "!A", "!B"]}
    assert keys == expected


def test_first_round_on_worked_example():
    st, changed = saturate_round(init_state(EX6, C))
    assert changed
    assert contains(iv("3/10", "9/10"), st.belief(C))
    horn = [s for s in st.steps if s.rule is RuleId.HORN]
    assert any(s.conclusion.interval == iv("3/10", "9/10") for s in horn)


def test_fixpoint_round_is_a_no_op():
    state = None
    for state in iterate(EX6, C):
        pass
    again, changed = saturate_round(state)
    assert not changed
    assert again.beliefs == state.beliefs


def test_saturate_round_refuses_inconsistent_state():
    st = init_state(parse_kb("P(A) in [0.8, 0.9]\nP(A) in [0.1, 0.2]"), Atom("A"))
    with pytest.raises(ValueError):
        saturate_round(st)


def test_run_worked_example():
    res = run(EX6, C)
    assert res.interval == iv("3/10", "4/5")
    assert res.consistent and res.converged
    assert snapshot(res.state, C) == iv("3/10", "4/5")


def test_run_detects_contradiction():
    res = run(CLASH, Atom("A"))
    assert res.interval is EMPTY and not res.consistent
    assert snapshot(res.state, Atom("A")) is EMPTY
    rules = {s.rule for s in res.trace}
    assert RuleId.NEGATION in rules and RuleId.MULTIPLE_DERIVATION in rules
    assert res.trace[-1].conclusion.interval is EMPTY


def test_incompleteness_witness():
    kb = parse_kb("P(A) in [0.3, 0.3]\nP(B) in [0.4, 0.4]\nP(A & B) in [0, 0]")
    target = parse_formula("A | B")
    # by hand: disjunction gives [max(.3,.4), min(1,.7)]; via !A & !B the
    # conjunction [max(0,.7+.6-1), min(.7,.6)] = [.3,.6] negates to the same
    assert run(kb, target).interval == iv("2/5", "7/10")
    assert entailed_interval(kb, target) == iv("7/10", "7/10")


def test_snapshot_outside_universe_warns():
    st = init_state(EX6, C)
    with pytest.warns(UserWarning):
        assert snapshot(st, Atom("Z")) == UNIT


def test_snapshots_recorded():
    res = run(EX6, C, EngineLimits(snapshot_every=2))
    rounds = [r for r, _ in res.snapshots]
    assert rounds[0] == 0 and rounds[-1] == res.rounds_used
    assert all(r % 2 == 0 for r in rounds[:-1])
    seen = []
    run(EX6, C, EngineLimits(snapshot_every=1), on_snapshot=lambda r, i: seen.append((r, i)))
    assert seen[0] == (0, UNIT) and seen[-1][1] == iv("3/10", "4/5")


def test_round_cap_reports_not_converged():
    kb = parse_kb("""
    P(A) in [0.9, 1]
    P(A -> B) in [0.9, 1]
    P(B -> C) in [0.9, 1]
    P(C -> D) in [0.9, 1]
    """)
    res = run(kb, Atom("D"), EngineLimits(max_rounds=1))
    assert res.rounds_used == 1 and not res.converged
    full = run(kb, Atom("D"))
    assert full.converged
    assert contains(res.interval, full.interval)
    # .9, then .9+.9-1 per link: B .8, C .7, D .6
    assert full.interval == iv("3/5", "1")
    assert contains(full.interval, entailed_interval(kb, Atom("D")))


def test_min_improvement_stops_early():
    kb = parse_kb("P(A) in [0.9, 1]\nP(A -> B) in [0.9, 1]\nP(B -> C) in [0.9, 1]")
    coarse = run(kb, Atom("C"), EngineLimits(min_improvement=F(1)))
    assert coarse.rounds_used == 1


def test_limits_validation():
    with pytest.raises(ValueError):
        EngineLimits(max_rounds=0)
    with pytest.raises(ValueError):
        EngineLimits(snapshot_every=0)


def test_saturate_without_target():
    assert saturate(CLASH).inconsistent
    assert not saturate(EX6).inconsistent


def test_trace_is_replayable_and_ordered():
    rng = random.Random(5)
    for _ in range(60):
        kb = random_kb(rng)
        state = None
        for state in iterate(kb, random_formula(rng, ["A", "B"])):
            pass
        indices = [s.index for s in state.steps]
        assert indices == sorted(indices) == list(range(len(indices)))
        for step in state.steps:
            assert step.replay() == step.conclusion
            assert step.replay().interval == step.conclusion.interval


def test_deterministic():
    rng = random.Random(9)
    for _ in range(20):
        kb = random_kb(rng)
        t = random_formula(rng, ["A", "B", "C"])
        a, b = run(kb, t), run(kb, t)
        assert a.interval == b.interval and a.rounds_used == b.rounds_used
        assert [(s.rule, s.premises, s.conclusion) for s in a.trace] == [
            (s.rule, s.premises, s.conclusion) for s in b.trace
        ]


@pytest.mark.parametrize("seed", range(10))
def test_soundness_and_monotonicity_small(seed):
    rng = random.Random(100 + seed)
    kb = random_kb(rng, max_atoms=3, max_sentences=4)
    target = random_formula(rng, ["A", "B"])
    states = list(iterate(kb, target))
    exact = {k: entailed_interval(kb, k) for k in states[0].beliefs}
    for prev, cur in zip(states, states[1:]):
        for k in exact:
            assert contains(prev.beliefs[k], cur.beliefs[k])
    for st in states:
        for k, e in exact.items():
            assert contains(st.beliefs[k], e)
    if states[-1].inconsistent:
        assert not is_consistent(kb)
