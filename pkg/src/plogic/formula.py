"""Propositional formulas: AST, parser, printer, evaluation and canonical keys.

The stored AST keeps implications as written; :func:`canonical_key` produces
a negation normal form with flattened, sorted ``&``/``|`` operands that is
used for formula identity throughout the engine.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union

__all__ = [
    "Atom",
    "Not",
    "And",
    "Or",
    "Implies",
    "Formula",
    "ParseError",
    "parse_formula",
    "format_formula",
    "evaluate",
    "truth_mask",
    "atoms",
    "subformulas",
    "canonical_key",
    "order_key",
    "conjuncts",
    "subformula_closure",
]

ATOM_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


@dataclass(frozen=True)
class Atom:
    name: str

    def __post_init__(self) -> None:
        if not ATOM_RE.fullmatch(self.name):
            raise ValueError(f"invalid atom name {self.name!r}")

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Not:
    child: Formula

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class And:
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Or:
    left: Formula
    right: Formula

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Implies:
    antecedent: Formula
    consequent: Formula

    def __str__(self) -> str:
        return format_formula(self)


Formula = Union[Atom, Not, And, Or, Implies]


class ParseError(ValueError):
    """Malformed formula or knowledge-base text.

    ``pos`` is a 0-based character offset within the parsed text and
    ``line`` a 1-based line number; either may be ``None``.
    """

    def __init__(self, message: str, pos: int | None = None, line: int | None = None):
        self.msg = message
        self.pos = pos
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if pos is not None:
            where.append(f"column {pos + 1}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(->)|([!~&|()])|([A-Za-z_][A-Za-z0-9_]*))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip() == "":
                break
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[bad]!r}", pos=bad)
        if m.group(1):
            tokens.append(("op", "->", m.start(1)))
        elif m.group(2):
            ch = m.group(2)
            tokens.append(("op", "!" if ch == "~" else ch, m.start(2)))
        elif m.group(3):
            tokens.append(("atom", m.group(3), m.start(3)))
        else:
            break
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str | None:
        if self.i < len(self.tokens):
            return self.tokens[self.i][1]
        return None

    def pos(self) -> int:
        if self.i < len(self.tokens):
            return self.tokens[self.i][2]
        return len(self.text)

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> Formula:
        if not self.tokens:
            raise ParseError("empty formula", pos=0)
        f = self.implies()
        if self.i != len(self.tokens):
            raise ParseError(f"unexpected token {self.peek()!r}", pos=self.pos())
        return f

    def implies(self) -> Formula:
        left = self.disjunction()
        if self.peek() == "->":
            self.take()
            return Implies(left, self.implies())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        if self.i >= len(self.tokens):
            raise ParseError("unexpected end of formula", pos=len(self.text))
        kind, value, pos = self.take()
        if kind == "atom":
            return Atom(value)
        if value == "!":
            return Not(self.unary())
        if value == "(":
            f = self.implies()
            if self.peek() != ")":
                raise ParseError("expected ')'", pos=self.pos())
            self.take()
            return f
        raise ParseError(f"unexpected token {value!r}", pos=pos)


def parse_formula(text: str) -> Formula:
    """Parse ``text`` into a formula.

    Precedence is ``!`` > ``&`` > ``|`` > ``->``; ``->`` associates to the
    right, ``&`` and ``|`` to the left. ``~`` is accepted for ``!``.

    >>> parse_formula("A & B -> C")
    Implies(antecedent=And(left=Atom(name='A'), right=Atom(name='B')), consequent=Atom(name='C'))
    """
    return _Parser(text).parse()


_PREC = {Implies: 1, Or: 2, And: 3, Not: 4, Atom: 5}


def format_formula(f: Formula) -> str:
    """Render ``f`` with the minimum parentheses that reparse to the same tree."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        inner = format_formula(f.child)
        return "!" + (inner if _PREC[type(f.child)] >= _PREC[Not] else f"({inner})")
    if isinstance(f, Implies):
        left = format_formula(f.antecedent)
        if _PREC[type(f.antecedent)] <= _PREC[Implies]:
            left = f"({left})"
        right = format_formula(f.consequent)
        if _PREC[type(f.consequent)] < _PREC[Implies]:
            right = f"({right})"
        return f"{left} -> {right}"
    op = " & " if isinstance(f, And) else " | "
    p = _PREC[type(f)]
    left = format_formula(f.left)
    if _PREC[type(f.left)] < p:
        left = f"({left})"
    right = format_formula(f.right)
    if _PREC[type(f.right)] <= p:
        right = f"({right})"
    return left + op + right


# ---------------------------------------------------------------------------
# Semantics
# ---------------------------------------------------------------------------

def evaluate(f: Formula, world: Mapping[str, bool]) -> bool:
    """Classical truth value of ``f`` in ``world``.

    Raises ``KeyError`` if the world does not assign an atom of ``f``.
    """
    if isinstance(f, Atom):
        try:
            return bool(world[f.name])
        except KeyError:
            raise KeyError(f"world does not assign atom {f.name!r}") from None
    if isinstance(f, Not):
        return not evaluate(f.child, world)
    if isinstance(f, And):
        return evaluate(f.left, world) and evaluate(f.right, world)
    if isinstance(f, Or):
        return evaluate(f.left, world) or evaluate(f.right, world)
    if isinstance(f, Implies):
        return (not evaluate(f.antecedent, world)) or evaluate(f.consequent, world)
    raise TypeError(f"not a formula: {f!r}")


def truth_mask(f: Formula, atom_masks: Mapping[str, int], full: int) -> int:
    """Evaluate ``f`` on many worlds at once.

    Each atom maps to an integer bitset of the worlds where it holds; ``full``
    is the bitset of all worlds. Returns the bitset of worlds satisfying ``f``.
    """
    if isinstance(f, Atom):
        try:
            return atom_masks[f.name]
        except KeyError:
            raise KeyError(f"no truth column for atom {f.name!r}") from None
    if isinstance(f, Not):
        return full ^ truth_mask(f.child, atom_masks, full)
    if isinstance(f, And):
        return truth_mask(f.left, atom_masks, full) & truth_mask(f.right, atom_masks, full)
    if isinstance(f, Or):
        return truth_mask(f.left, atom_masks, full) | truth_mask(f.right, atom_masks, full)
    if isinstance(f, Implies):
        return (full ^ truth_mask(f.antecedent, atom_masks, full)) | truth_mask(
            f.consequent, atom_masks, full
        )
    raise TypeError(f"not a formula: {f!r}")


def atoms(f: Formula) -> frozenset[str]:
    """Names of the atoms occurring in ``f``."""
    return frozenset(a.name for a in subformulas(f) if isinstance(a, Atom))


def subformulas(f: Formula) -> Iterator[Formula]:
    """Pre-order walk over ``f`` and all its subformulas (with repeats)."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        if isinstance(g, Not):
            stack.append(g.child)
        elif isinstance(g, (And, Or)):
            stack.append(g.right)
            stack.append(g.left)
        elif isinstance(g, Implies):
            stack.append(g.consequent)
            stack.append(g.antecedent)


# ---------------------------------------------------------------------------
# Canonical keys
# ---------------------------------------------------------------------------

_KIND_RANK = {Atom: 0, Not: 1, And: 2, Or: 3, Implies: 4}


def _flatten(f: Formula, kind: type) -> list[Formula]:
    out: list[Formula] = []
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, kind):
            stack.append(g.right)
            stack.append(g.left)
        else:
            out.append(g)
    return out


def conjuncts(f: Formula) -> list[Formula]:
    """Operands of a (possibly nested) conjunction, left to right."""
    return _flatten(f, And)


def order_key(f: Formula) -> tuple:
    """Deterministic total-order key: node kind, then atom name, then children."""
    if isinstance(f, Atom):
        return (0, f.name)
    if isinstance(f, Not):
        return (1, order_key(f.child))
    if isinstance(f, (And, Or)):
        return (_KIND_RANK[type(f)], tuple(order_key(g) for g in _flatten(f, type(f))))
    return (4, (order_key(f.antecedent), order_key(f.consequent)))


def _nnf(f: Formula, negate: bool) -> Formula:
    if isinstance(f, Atom):
        return Not(f) if negate else f
    if isinstance(f, Not):
        return _nnf(f.child, not negate)
    if isinstance(f, Implies):
        f = Or(Not(f.antecedent), f.consequent)
    if isinstance(f, And):
        kind = Or if negate else And
    else:
        kind = And if negate else Or
    return kind(_nnf(f.left, negate), _nnf(f.right, negate))


def _build(kind: type, operands: Iterable[Formula]) -> Formula:
    ops = sorted(operands, key=order_key)
    out = ops[0]
    for g in ops[1:]:
        out = kind(out, g)
    return out


def _sort_nnf(f: Formula) -> Formula:
    if isinstance(f, (Atom, Not)):
        return f
    kind = type(f)
    return _build(kind, (_sort_nnf(g) for g in _flatten(f, kind)))


def canonical_key(f: Formula) -> Formula:
    """Negation normal form with flattened, sorted ``&``/``|`` operands.

    Two formulas that differ only by implication elimination, De Morgan,
    double negation, associativity or commutativity get the same key. Other
    logical equivalences (absorption, idempotence, ...) are not detected.
    """
    return _sort_nnf(_nnf(f, False))


def join_keys(kind: type, left: Formula, right: Formula) -> Formula:
    """``canonical_key(kind(left, right))`` for already canonical operands."""
    return _build(kind, _flatten(left, kind) + _flatten(right, kind))


def negate_key(key: Formula) -> Formula:
    """``canonical_key(Not(key))`` for an already canonical ``key``."""
    return canonical_key(Not(key))


def subformula_closure(fs: Iterable[Formula]) -> set[Formula]:
    """All subformulas of ``fs`` plus one negation of each, deduplicated by key.

    The first formula met for a key (in walk order) represents it.
    """
    seen: dict[Formula, Formula] = {}
    for f in fs:
        for g in subformulas(f):
            for h in (g, g.child if isinstance(g, Not) else Not(g)):
                seen.setdefault(canonical_key(h), h)
    return set(seen.values())
