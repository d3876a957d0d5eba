"""
Deciding non-integrability
==========================

Each potential in the family is reduced to a single number tau, and the
rule table turns its arithmetic into a verdict.  The trace keeps the
evidence that led there.
"""

from fractions import Fraction

from sextic_galois import PotentialParams, classify_tau, decide

# tau^2 = (2A + 4C)/(9C) is all that matters, so B never enters
for abcd in [(1, 7, 1, 0), (16, 0, 1, 0), (30, 0, 1, 0), (0, 0, 1, 5), (0, 0, 1, 0), (1, 0, 0, 0)]:
    v = decide(PotentialParams(*abcd))
    print(f"A, B, C, D = {abcd}: {v.conclusion} {v.rule or ''}")

# the classification of tau for A = 30: both signs of 8/3 are resonant
cls = classify_tau(30, 1)
print("tau =", cls.tau, "realizations:", cls.realizations)

# the trace is a list of plain records
for rec in decide(PotentialParams(30, 0, 1, 0)).trace:
    print(rec["step"], "->", {k: v for k, v in rec.items() if k != "step"})

# scaling every coefficient by a positive rational leaves the verdict alone
lam = Fraction(7, 3)
print(decide(PotentialParams(lam * 16, 0, lam, 0)).rule)
