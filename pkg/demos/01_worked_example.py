"""Rule-based deduction vs. exact entailment on a five-sentence KB.

Run from the repository root:  python demos/01_worked_example.py
"""
from pathlib import Path

from plogic import entailed_interval, load_kb, parse_formula, run

kb = load_kb(Path(__file__).parent / "kbs" / "ex6.plog")
for s in kb:
    print(s)

# %% The engine starts C at [0, 1] and narrows it with rule applications.
target = parse_formula("C")
res = run(kb, target)
print("\nrules:", res.interval, f"after {res.rounds_used} rounds")

# The derivation explains the bound: two independent routes to C, merged by
# intersecting their intervals.
for step in res.trace:
    premises = "; ".join(str(p) for p in step.premises)
    print(f"  round {step.round} {step.rule}: {premises}  =>  {step.conclusion}")

# %% The possible-worlds LP gives the least interval; here the rules reach it.
exact = entailed_interval(kb, target)
print("exact:", exact)
assert exact == res.interval
