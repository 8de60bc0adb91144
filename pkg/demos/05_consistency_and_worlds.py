"""Inconsistent knowledge bases and the possible-worlds table."""
from pathlib import Path

from plogic import is_consistent, load_kb, parse_formula, run
from plogic.oracle import worlds_csv

kbs = Path(__file__).parent / "kbs"

# %% P(A) and P(!A) cannot both exceed 1/2. The engine finds this by negating
# one sentence and intersecting with the other; the LP finds no distribution.
clash = load_kb(kbs / "clash.plog")
res = run(clash, parse_formula("A"))
print("engine consistent:", res.consistent, "interval:", res.interval)
print("oracle consistent:", is_consistent(clash))
for step in res.trace:
    print(f"  {step.rule}: {'; '.join(map(str, step.premises))} => {step.conclusion}")

# %% Each row is a world; the columns after the atoms say which sentences it satisfies.
print()
print(worlds_csv(load_kb(kbs / "exclusive.plog"), parse_formula("A | B")))
