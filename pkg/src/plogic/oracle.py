"""Exact probabilistic entailment by possible worlds and linear programming.

Every truth assignment to the atoms of the KB and target is a world. A model
is a probability distribution over worlds; each KB sentence constrains the
total mass of the worlds satisfying its formula. Minimising and maximising
the mass on the target's worlds gives the least entailed interval.

Truth columns are integer bitsets over world indices: bit ``i`` of an atom's
mask is set when world ``i`` makes the atom true.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .formula import Formula, atoms, format_formula, truth_mask
from .interval import EMPTY, ProbInterval
from .kb import DEFAULT_ATOM_CAP, KnowledgeBase
from .simplex import Constraint, LinearProgram, lp_solve

__all__ = [
    "AtomCapExceeded",
    "WorldTable",
    "enumerate_worlds",
    "build_table",
    "build_lp",
    "entailed_interval",
    "is_consistent",
    "worlds_csv",
]

ONE = Fraction(1)
ZERO = Fraction(0)


class AtomCapExceeded(ValueError):
    def __init__(self, n_atoms: int, cap: int):
        self.n_atoms = n_atoms
        self.cap = cap
        super().__init__(f"{n_atoms} atoms exceeds the exact-mode cap of {cap}")


@dataclass(frozen=True)
class WorldTable:
    """Worlds over ``atoms`` in binary counting order (first atom most significant).

    ``sat[i]`` is the bitset of worlds satisfying ``formulas[i]``.
    """

    atoms: tuple[str, ...]
    atom_masks: dict
    formulas: tuple[Formula, ...] = ()
    sat: tuple[int, ...] = ()

    @property
    def n_worlds(self) -> int:
        return 1 << len(self.atoms)

    @property
    def full(self) -> int:
        return (1 << self.n_worlds) - 1

    def world(self, i: int) -> dict[str, bool]:
        k = len(self.atoms)
        return {a: bool(i >> (k - 1 - j) & 1) for j, a in enumerate(self.atoms)}

    @property
    def worlds(self) -> list[dict[str, bool]]:
        return [self.world(i) for i in range(self.n_worlds)]

    def with_formulas(self, formulas: Sequence[Formula]) -> WorldTable:
        fs = tuple(formulas)
        return WorldTable(self.atoms, self.atom_masks, fs,
                          tuple(truth_mask(f, self.atom_masks, self.full) for f in fs))

    def columns(self, dedup: bool = True) -> list[int]:
        """World groups used as LP columns.

        Without ``dedup`` every world is its own column. With it, worlds that
        agree on every formula are merged, which leaves the optimum unchanged.
        """
        if not dedup:
            return [1 << i for i in range(self.n_worlds)]
        blocks = [self.full]
        for m in self.sat:
            refined = []
            for b in blocks:
                inside, outside = b & m, b & ~m
                if inside:
                    refined.append(inside)
                if outside:
                    refined.append(outside)
            blocks = refined
        return sorted(blocks, key=lambda b: (b & -b).bit_length())


def _atom_mask(j: int, k: int) -> int:
    period = 1 << (k - j)
    half = period >> 1
    block = ((1 << half) - 1) << half
    reps = 1 << j
    return block * (((1 << (period * reps)) - 1) // ((1 << period) - 1))


def enumerate_worlds(atom_names: Sequence[str], cap: int = DEFAULT_ATOM_CAP) -> WorldTable:
    """All ``2**k`` assignments to ``atom_names`` (kept in the given order)."""
    names = tuple(atom_names)
    if len(names) > cap:
        raise AtomCapExceeded(len(names), cap)
    k = len(names)
    return WorldTable(names, {a: _atom_mask(j, k) for j, a in enumerate(names)})


def build_table(kb: KnowledgeBase, target: Formula | None = None,
                cap: int = DEFAULT_ATOM_CAP) -> WorldTable:
    """World table with one truth column per KB sentence, then the target."""
    names = set(kb.atom_set)
    if target is not None:
        names |= atoms(target)
    formulas = list(kb.formulas) + ([target] if target is not None else [])
    return enumerate_worlds(sorted(names), cap).with_formulas(formulas)


def build_lp(kb: KnowledgeBase, table: WorldTable, with_target: bool = True,
             dedup: bool = True) -> LinearProgram:
    """One variable per world (group); mass sums to 1 and respects each KB interval.

    The objective is the mass on the target's worlds when the table carries
    a target column, and zero otherwise.
    """
    cols = table.columns(dedup)
    n_kb = len(kb.sentences)
    cons = [Constraint(tuple(ONE for _ in cols), ONE, ONE)]
    for s, m in zip(kb.sentences, table.sat[:n_kb]):
        row = tuple(ONE if c & m else ZERO for c in cols)
        cons.append(Constraint(row, s.interval.lo, s.interval.hi))
    if with_target and len(table.sat) > n_kb:
        t = table.sat[n_kb]
        objective = tuple(ONE if c & t else ZERO for c in cols)
    else:
        objective = tuple(ZERO for _ in cols)
    return LinearProgram(len(cols), tuple(cons), objective)


def entailed_interval(kb: KnowledgeBase, target: Formula, cap: int = DEFAULT_ATOM_CAP,
                      dedup: bool = True) -> ProbInterval:
    """Least interval ``I`` with ``kb`` entailing ``P(target) in I``; EMPTY if ``kb`` is unsatisfiable."""
    table = build_table(kb, target, cap)
    lp = build_lp(kb, table, dedup=dedup)
    lo = lp_solve(lp, "min")
    if lo is None:
        return EMPTY
    hi = lp_solve(lp, "max")
    return ProbInterval(lo.value, hi.value)


def is_consistent(kb: KnowledgeBase, cap: int = DEFAULT_ATOM_CAP) -> bool:
    """Whether some distribution over worlds satisfies every sentence of ``kb``."""
    table = build_table(kb, None, cap)
    return lp_solve(build_lp(kb, table, with_target=False)) is not None


def worlds_csv(kb: KnowledgeBase, target: Formula | None = None,
               cap: int = DEFAULT_ATOM_CAP) -> str:
    """One row per world: atom values, then 0/1 per KB sentence and target."""
    table = build_table(kb, target, cap)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([*table.atoms, *(f"P({format_formula(f)})" for f in table.formulas)])
    for i in range(table.n_worlds):
        bit = 1 << i
        w.writerow([*(int(bool(table.atom_masks[a] & bit)) for a in table.atoms),
                    *(int(bool(m & bit)) for m in table.sat)])
    return buf.getvalue()
