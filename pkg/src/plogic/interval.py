"""Exact-rational probability intervals.

A :class:`ProbInterval` is a closed subinterval of [0, 1] with
:class:`fractions.Fraction` endpoints, or the distinct :data:`EMPTY` value
that signals an inconsistent set of constraints.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Context, Decimal
from fractions import Fraction
from typing import Union

__all__ = [
    "ProbInterval",
    "EMPTY",
    "UNIT",
    "make_interval",
    "point",
    "intersect",
    "contains",
    "width",
    "parse_number",
    "format_rational",
    "decimal_approx",
]

Number = Union[Fraction, int, str]

_DECIMAL_RE = re.compile(r"(\d*)\.(\d{1,12})|(\d+)")
_RATIONAL_RE = re.compile(r"(\d+)\s*/\s*(\d+)")


def _frac(x: Number) -> Fraction:
    if isinstance(x, float):
        raise TypeError("use exact values (Fraction, int or str), not float")
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class ProbInterval:
    """Closed interval ``[lo, hi]`` with ``0 <= lo <= hi <= 1``.

    The empty interval has both endpoints ``None``; use :data:`EMPTY`.
    """

    lo: Fraction | None
    hi: Fraction | None

    def __post_init__(self) -> None:
        if self.lo is None and self.hi is None:
            return
        if self.lo is None or self.hi is None:
            raise ValueError("both endpoints must be given")
        lo, hi = _frac(self.lo), _frac(self.hi)
        if not (0 <= lo <= 1 and 0 <= hi <= 1):
            raise ValueError(f"endpoints must lie in [0, 1], got [{lo}, {hi}]")
        if lo > hi:
            raise ValueError(f"lower endpoint {lo} exceeds upper endpoint {hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def is_empty(self) -> bool:
        return self.lo is None

    def __and__(self, other: ProbInterval) -> ProbInterval:
        return intersect(self, other)

    def __contains__(self, other: ProbInterval) -> bool:
        return contains(self, other)

    def __str__(self) -> str:
        if self.is_empty:
            return "EMPTY"
        return f"[{self.lo}, {self.hi}]"


EMPTY = ProbInterval(None, None)
UNIT = ProbInterval(Fraction(0), Fraction(1))


def make_interval(lo: Number, hi: Number) -> ProbInterval:
    """Build ``[lo, hi]``; raises ``ValueError`` outside [0, 1] or if ``lo > hi``."""
    return ProbInterval(_frac(lo), _frac(hi))


def point(p: Number) -> ProbInterval:
    return make_interval(p, p)


def intersect(a: ProbInterval, b: ProbInterval) -> ProbInterval:
    if a.is_empty or b.is_empty:
        return EMPTY
    lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
    if lo > hi:
        return EMPTY
    return ProbInterval(lo, hi)


def contains(outer: ProbInterval, inner: ProbInterval) -> bool:
    """True iff ``inner`` is a subset of ``outer``."""
    if inner.is_empty:
        return True
    if outer.is_empty:
        return False
    return outer.lo <= inner.lo and inner.hi <= outer.hi


def width(i: ProbInterval) -> Fraction:
    if i.is_empty:
        return Fraction(0)
    return i.hi - i.lo


def parse_number(text: str) -> Fraction:
    """Parse a decimal (at most 12 fractional digits) or ``num/den`` exactly.

    >>> parse_number("0.8")
    Fraction(4, 5)
    >>> parse_number("3/10")
    Fraction(3, 10)
    """
    s = text.strip()
    m = _RATIONAL_RE.fullmatch(s)
    if m:
        den = int(m.group(2))
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(m.group(1)), den)
    m = _DECIMAL_RE.fullmatch(s)
    if m:
        return Fraction(Decimal(s))
    raise ValueError(f"not a decimal or rational: {text!r}")


def format_rational(x: Fraction) -> str:
    """``num/den`` form, always with an explicit denominator."""
    return f"{x.numerator}/{x.denominator}"


_CTX6 = Context(prec=6)


def decimal_approx(x: Fraction) -> float:
    """``x`` rounded to 6 significant digits."""
    d = _CTX6.divide(Decimal(x.numerator), Decimal(x.denominator))
    return float(d)
