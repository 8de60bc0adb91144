"""Knowledge bases of interval-probability sentences and their text format.

One sentence per line::

    # comment
    P(A & B -> C) in [0.8, 0.9]
    P(D) in [1/2, 7/10]
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Union

from .formula import Formula, ParseError, atoms, canonical_key, format_formula, order_key, parse_formula
from .interval import ProbInterval, format_rational, intersect, make_interval, parse_number

__all__ = [
    "Sentence",
    "KnowledgeBase",
    "Diagnostic",
    "DEFAULT_ATOM_CAP",
    "parse_kb",
    "load_kb",
    "format_sentence",
    "format_kb",
    "validate",
]

DEFAULT_ATOM_CAP = 20

_LINE_RE = re.compile(r"P\s*\((?P<formula>.*)\)\s*in\s*\[(?P<lo>[^,\]]*),(?P<hi>[^\]]*)\]")


@dataclass(frozen=True)
class Sentence:
    """``P(formula) in interval``.

    ``origin`` is the source line number for parsed sentences or a string
    naming the derivation for inferred ones.
    """

    formula: Formula
    interval: ProbInterval
    origin: Union[int, str, None] = field(default=None, compare=False)

    def __str__(self) -> str:
        return format_sentence(self)


@dataclass(frozen=True)
class KnowledgeBase:
    sentences: tuple[Sentence, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "sentences", tuple(self.sentences))

    @property
    def atom_set(self) -> frozenset[str]:
        out: frozenset[str] = frozenset()
        for s in self.sentences:
            out |= atoms(s.formula)
        return out

    @property
    def formulas(self) -> list[Formula]:
        return [s.formula for s in self.sentences]

    def __len__(self) -> int:
        return len(self.sentences)

    def __iter__(self):
        return iter(self.sentences)

    @classmethod
    def of(cls, *items: tuple[str, object, object]) -> KnowledgeBase:
        """Shorthand: ``KnowledgeBase.of(("A", "3/10", "1/2"), ...)``."""
        return cls(
            tuple(Sentence(parse_formula(f), make_interval(parse_number(str(lo)), parse_number(str(hi))))
                  for f, lo, hi in items)
        )


@dataclass(frozen=True)
class Diagnostic:
    level: str
    message: str
    line: int | None = None

    def __str__(self) -> str:
        where = f"line {self.line}: " if self.line is not None else ""
        return f"{self.level}: {where}{self.message}"


def parse_kb(text: str) -> KnowledgeBase:
    """Parse knowledge-base text. Raises :class:`ParseError` with a line number."""
    sentences = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _LINE_RE.fullmatch(line)
        if m is None:
            raise ParseError("expected 'P(<formula>) in [<lo>, <hi>]'", line=lineno)
        try:
            formula = parse_formula(m.group("formula"))
        except ParseError as exc:
            raise ParseError(exc.msg, pos=exc.pos, line=lineno) from None
        try:
            lo = parse_number(m.group("lo"))
            hi = parse_number(m.group("hi"))
            interval = make_interval(lo, hi)
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from None
        sentences.append(Sentence(formula, interval, origin=lineno))
    return KnowledgeBase(tuple(sentences))


def load_kb(path) -> KnowledgeBase:
    with open(path, encoding="utf-8") as fh:
        return parse_kb(fh.read())


def format_sentence(s: Sentence) -> str:
    i = s.interval
    if i.is_empty:
        return f"P({format_formula(s.formula)}) in EMPTY"
    return f"P({format_formula(s.formula)}) in [{format_rational(i.lo)}, {format_rational(i.hi)}]"


def format_kb(kb: KnowledgeBase | Iterable[Sentence]) -> str:
    return "".join(format_sentence(s) + "\n" for s in kb)


def validate(kb: KnowledgeBase, atom_cap: int = DEFAULT_ATOM_CAP) -> list[Diagnostic]:
    """Cheap pre-checks; never raises."""
    out = []
    groups: dict[Formula, list[Sentence]] = {}
    for s in kb.sentences:
        groups.setdefault(canonical_key(s.formula), []).append(s)
    for key in sorted(groups, key=order_key):
        group = groups[key]
        if len(group) < 2:
            continue
        acc = group[0].interval
        for s in group[1:]:
            acc = intersect(acc, s.interval)
        if acc.is_empty:
            lines = ", ".join(str(s.origin) for s in group if s.origin is not None)
            out.append(Diagnostic(
                "warning",
                f"disjoint intervals for {format_formula(key)}" + (f" (lines {lines})" if lines else ""),
                group[-1].origin if isinstance(group[-1].origin, int) else None,
            ))
    n = len(kb.atom_set)
    if n > atom_cap:
        out.append(Diagnostic("warning", f"{n} atoms exceeds exact-mode atom cap of {atom_cap}"))
    return out
