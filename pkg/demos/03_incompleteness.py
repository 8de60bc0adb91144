"""A case the rules cannot close.

A and B are mutually exclusive, so P(A | B) = P(A) + P(B) exactly. None of
the rules adds probabilities of exclusive events, so the engine stops at a
wider interval.
"""
from plogic import entailed_interval, parse_formula, parse_kb, run

kb = parse_kb("""
P(A) in [0.3, 0.3]
P(B) in [0.4, 0.4]
P(A & B) in [0, 0]
""")
target = parse_formula("A | B")

rules = run(kb, target)
exact = entailed_interval(kb, target)
print("rules:", rules.interval)   # [2/5, 7/10]
print("exact:", exact)            # [7/10, 7/10]
for step in rules.trace:
    print(f"  {step.rule}: {'; '.join(map(str, step.premises))} => {step.conclusion}")
