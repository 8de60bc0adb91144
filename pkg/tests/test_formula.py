import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from plogic.formula import (
    And,
    Atom,
    Implies,
    Not,
    Or,
    ParseError,
    atoms,
    canonical_key,
    evaluate,
    format_formula,
    parse_formula,
    subformula_closure,
    truth_mask,
)
from plogic.oracle import enumerate_worlds

from _gen import worlds_over

A, B, C, D = Atom("A"), Atom("B"), Atom("C"), Atom("D")

formulas = st.recursive(
    st.sampled_from([A, B, C, D]),
    lambda inner: st.one_of(
        st.builds(Not, inner),
        st.builds(And, inner, inner),
        st.builds(Or, inner, inner),
        st.builds(Implies, inner, inner),
    ),
    max_leaves=8,
)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("A & B -> C", Implies(And(A, B), C)),
        ("!A | B & C", Or(Not(A), And(B, C))),
        ("A -> B -> C", Implies(A, Implies(B, C))),
        ("A & B & C", And(And(A, B), C)),
        ("A | B | C", Or(Or(A, B), C)),
        ("~~A", Not(Not(A))),
        ("  ( A ->B )&C ", And(Implies(A, B), C)),
        ("x_1", Atom("x_1")),
    ],
)
def test_parse(text, expected):
    assert parse_formula(text) == expected


@pytest.mark.parametrize("text", ["", "   ", "A &", "(A", "A B", "A)", "&A", "A $ B", "1A", "A - > B"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_formula(text)


def test_parse_error_position():
    with pytest.raises(ParseError) as exc:
        parse_formula("A & (B | )")
    assert exc.value.pos == 9


def test_invalid_atom_name():
    with pytest.raises(ValueError):
        Atom("1x")


def test_evaluate_examples():
    f = parse_formula("A & B -> C")
    assert evaluate(f, {"A": True, "B": True, "C": False}) is False
    assert evaluate(f, {"A": False, "B": True, "C": False}) is True
    g = parse_formula("!(A | !A)")
    assert not any(evaluate(g, {"A": v}) for v in (False, True))


def test_evaluate_missing_atom():
    with pytest.raises(KeyError):
        evaluate(parse_formula("A & B"), {"A": True})


def test_atoms():
    assert atoms(parse_formula("A & B -> C")) == {"A", "B", "C"}
    assert atoms(parse_formula("A & A")) == {"A"}
    assert atoms(parse_formula("!X")) == {"X"}


def test_canonical_key_examples():
    assert canonical_key(parse_formula("!(!A & !B)")) == canonical_key(parse_formula("A | B"))
    assert canonical_key(parse_formula("!!A")) == A
    assert canonical_key(parse_formula("B & A")) == canonical_key(parse_formula("A & B"))
    assert canonical_key(parse_formula("A -> B")) == canonical_key(parse_formula("B | !A"))
    assert canonical_key(parse_formula("(A & B) & C")) == canonical_key(parse_formula("C & (B & A)"))


def test_canonical_key_not_semantic():
    # absorption is a logical equivalence the syntactic key does not see
    assert canonical_key(parse_formula("A | A & B")) != canonical_key(A)


def test_subformula_closure():
    keys = {canonical_key(f) for f in subformula_closure({parse_formula("A & B")})}
    expected = {canonical_key(parse_formula(t)) for t in ["A & B", "A", "B", "!(A & B)", "!A", "!B"]}
    assert keys == expected
    assert {canonical_key(f) for f in subformula_closure({A})} == {A, Not(A)}
    assert subformula_closure(set()) == set()


@given(formulas)
def test_canonical_key_preserves_truth(f):
    names = sorted(atoms(f))
    key = canonical_key(f)
    for w in worlds_over(names):
        assert evaluate(key, w) == evaluate(f, w)


@given(formulas)
def test_canonical_key_idempotent(f):
    key = canonical_key(f)
    assert canonical_key(key) == key


@given(formulas)
def test_print_parse_round_trip(f):
    assert parse_formula(format_formula(f)) == f


@given(formulas)
def test_canonical_key_is_nnf(f):
    for g in _walk(canonical_key(f)):
        assert not isinstance(g, Implies)
        if isinstance(g, Not):
            assert isinstance(g.child, Atom)


def _walk(f):
    yield f
    for child in getattr(f, "__dict__", {}).values():
        if not isinstance(child, str):
            yield from _walk(child)


@settings(max_examples=200)
@given(formulas, formulas)
def test_syntactic_equivalences_share_key(f, g):
    pairs = [
        (And(f, g), And(g, f)),
        (Or(f, g), Or(g, f)),
        (Not(And(f, g)), Or(Not(f), Not(g))),
        (Not(Or(f, g)), And(Not(f), Not(g))),
        (Not(Not(f)), f),
        (Implies(f, g), Or(Not(f), g)),
    ]
    for a, b in pairs:
        assert canonical_key(a) == canonical_key(b)


def test_equivalent_small_formulas_share_key_exhaustive():
    base = [A, B, C, Not(A), And(A, B), Or(B, C)]
    for f, g in itertools.product(base, repeat=2):
        assert canonical_key(Implies(f, g)) == canonical_key(Or(g, Not(f)))
        assert canonical_key(Not(And(f, Not(g)))) == canonical_key(Implies(f, g))


@given(formulas)
def test_truth_mask_matches_evaluate(f):
    names = sorted(atoms(f))
    table = enumerate_worlds(names)
    mask = truth_mask(f, table.atom_masks, table.full)
    for i, w in enumerate(table.worlds):
        assert bool(mask >> i & 1) == evaluate(f, w)
