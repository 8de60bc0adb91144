"""Stopping the engine early still gives a sound (if wider) interval.

A chain of implications needs one round per link, so capping the number of
rounds shows the interval for the last atom tightening step by step.
"""
from plogic import EngineLimits, contains, entailed_interval, parse_formula, parse_kb, run

kb = parse_kb("""
P(A) in [0.95, 1]
P(A -> B) in [0.95, 1]
P(B -> C) in [0.95, 1]
P(C -> D) in [0.95, 1]
P(D -> E) in [0.95, 1]
""")
target = parse_formula("E")
exact = entailed_interval(kb, target)

for cap in range(1, 7):
    res = run(kb, target, EngineLimits(max_rounds=cap))
    status = "converged" if res.converged else "stopped"
    print(f"max_rounds={cap}: {res.interval}  ({status})")
    assert contains(res.interval, exact)

# %% The same stream, recorded in one run.
res = run(kb, target, EngineLimits(snapshot_every=1))
for rnd, interval in res.snapshots:
    print(f"round {rnd}: {interval}")
print("exact:", exact)
