"""Two-phase tableau simplex over exact rationals with Bland's rule.

Variables are non-negative. Each constraint row is ``lo <= a.x <= hi`` with
either bound optional; ``lo == hi`` gives an equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

__all__ = ["Constraint", "LinearProgram", "Optimum", "UnboundedError", "lp_solve"]

ZERO = Fraction(0)


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None


@dataclass(frozen=True)
class LinearProgram:
    n_vars: int
    constraints: tuple[Constraint, ...]
    objective: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.objective) != self.n_vars:
            raise ValueError("objective length does not match n_vars")
        for c in self.constraints:
            if len(c.coeffs) != self.n_vars:
                raise ValueError("constraint length does not match n_vars")


@dataclass(frozen=True)
class Optimum:
    value: Fraction
    x: tuple[Fraction, ...]


class UnboundedError(ArithmeticError):
    pass


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], basis: list[int], n_cols: int):
        self.rows = rows          # each row has n_cols entries plus the rhs
        self.basis = basis
        self.n_cols = n_cols

    def pivot(self, r: int, j: int, cost: list[Fraction]) -> None:
        row = self.rows[r]
        p = row[j]
        if p != 1:
            row[:] = [v / p for v in row]
        nz = [k for k, v in enumerate(row) if v]
        for other in (*(x for i, x in enumerate(self.rows) if i != r), cost):
            f = other[j]
            if f:
                for k in nz:
                    other[k] -= f * row[k]
        self.basis[r] = j

    def optimize(self, cost: list[Fraction], allowed: int) -> None:
        """Minimise with reduced-cost row ``cost`` over columns ``< allowed``."""
        while True:
            j = next((k for k in range(allowed) if cost[k] < 0), None)
            if j is None:
                return
            best = None
            for i, row in enumerate(self.rows):
                a = row[j]
                if a > 0:
                    key = (row[-1] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                raise UnboundedError("objective is unbounded")
            self.pivot(best[1], j, cost)


def _reduced_costs(tab: _Tableau, c: Sequence[Fraction]) -> list[Fraction]:
    cost = list(c) + [ZERO]
    for i, row in enumerate(tab.rows):
        cb = c[tab.basis[i]]
        if cb:
            for k, v in enumerate(row):
                if v:
                    cost[k] -= cb * v
    return cost


def lp_solve(lp: LinearProgram, direction: str = "min") -> Optimum | None:
    """Exact optimum of ``lp`` in ``direction`` ("min" or "max"); ``None`` if infeasible."""
    if direction not in ("min", "max"):
        raise ValueError("direction must be 'min' or 'max'")
    n = lp.n_vars
    # standard form rows: (coeffs over originals, slack sign or 0, rhs)
    std: list[tuple[tuple[Fraction, ...], int, Fraction]] = []
    for c in lp.constraints:
        coeffs = tuple(Fraction(v) for v in c.coeffs)
        if c.lo is not None and c.hi is not None and c.lo == c.hi:
            std.append((coeffs, 0, Fraction(c.lo)))
            continue
        if c.hi is not None:
            std.append((coeffs, 1, Fraction(c.hi)))
        if c.lo is not None:
            std.append((coeffs, -1, Fraction(c.lo)))

    n_slack = sum(1 for _, s, _ in std if s)
    rows: list[list[Fraction]] = []
    basis: list[int] = []
    needs_art: list[int] = []
    slack_col = n
    for coeffs, sign, rhs in std:
        row = list(coeffs) + [ZERO] * n_slack
        if sign:
            row[slack_col] = Fraction(sign)
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        row.append(rhs)
        if sign and row[slack_col] == 1:
            basis.append(slack_col)
        else:
            basis.append(-1)
            needs_art.append(len(rows))
        if sign:
            slack_col += 1
        rows.append(row)

    n_real = n + n_slack
    n_art = len(needs_art)
    for row in rows:
        rhs = row.pop()
        row.extend([ZERO] * n_art)
        row.append(rhs)
    for a, i in enumerate(needs_art):
        rows[i][n_real + a] = Fraction(1)
        basis[i] = n_real + a
    tab = _Tableau(rows, basis, n_real + n_art)

    if n_art:
        c1 = [ZERO] * n_real + [Fraction(1)] * n_art
        cost = _reduced_costs(tab, c1)
        tab.optimize(cost, n_real + n_art)
        if cost[-1] != 0:
            return None
        # drive zero-valued artificials out of the basis; drop redundant rows
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] >= n_real:
                j = next((k for k in range(n_real) if tab.rows[i][k] != 0), None)
                if j is None:
                    del tab.rows[i]
                    del tab.basis[i]
                    continue
                tab.pivot(i, j, [ZERO] * (n_real + n_art + 1))
            i += 1

    sign = 1 if direction == "min" else -1
    c2 = [sign * Fraction(v) for v in lp.objective] + [ZERO] * (n_slack + n_art)
    cost = _reduced_costs(tab, c2)
    tab.optimize(cost, n_real)

    x = [ZERO] * n_real
    for i, b in enumerate(tab.basis):
        if b < n_real:
            x[b] = tab.rows[i][-1]
    xs = tuple(x[:n])
    value = sum((Fraction(c) * v for c, v in zip(lp.objective, xs)), ZERO)
    return Optimum(value, xs)
