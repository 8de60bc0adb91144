"""How tight is each rule?

On two unrelated atoms the conjunction rule gives exactly the least interval
(the Fréchet bounds). When premises share atoms, rules can be loose.
"""
import random
from fractions import Fraction

from plogic import KnowledgeBase, Sentence, entailed_interval, make_interval, parse_formula
from plogic.rules import conjunction_rule, disjunction_rule, implication_rule

rng = random.Random(0)


def rand_interval(den=10):
    a, b = sorted(rng.randint(0, den) for _ in range(2))
    return make_interval(Fraction(a, den), Fraction(b, den))


A, B = parse_formula("A"), parse_formula("B")
for _ in range(5):
    s1, s2 = Sentence(A, rand_interval()), Sentence(B, rand_interval())
    out = conjunction_rule(s1, s2)
    exact = entailed_interval(KnowledgeBase((s1, s2)), out.formula)
    print(f"{s1}, {s2}: rule {out.interval}, exact {exact}")

# %% Disjunction of a formula with its own negation: the rule cannot see that
# A | !A is valid.
s1 = Sentence(A, make_interval(Fraction(3, 10), Fraction(3, 10)))
s2 = Sentence(parse_formula("!A"), make_interval(Fraction(7, 10), Fraction(7, 10)))
out = disjunction_rule(s1, s2)
print("\nA | !A: rule", out.interval, "exact", entailed_interval(KnowledgeBase((s1, s2)), out.formula))

# %% Implication whose consequent already implies the clause.
s_a = Sentence(parse_formula("B"), make_interval(Fraction(1, 2), Fraction(1, 2)))
s_imp = Sentence(parse_formula("B -> B"), make_interval(1, 1))
out = implication_rule(s_a, s_imp)
print("B -> B: rule", out.interval, "exact", entailed_interval(KnowledgeBase((s_a, s_imp)), out.formula))
