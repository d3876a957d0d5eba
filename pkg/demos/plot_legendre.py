"""
Solvability of the associated Legendre equation
===============================================

The Legendre equation with parameters (p, q) has a solvable Galois group
only in a few arithmetic patterns.  Each rule below either fires (ruling
solvability out) or records why it did not.
"""

from fractions import Fraction

from sextic_galois import LegendreParams, QuadraticSurd, solvability_verdict
from sextic_galois.legendre import exponents

lp = LegendreParams(Fraction(1, 4), Fraction(1, 6))
ex = exponents(lp)
print("exponents at +1, -1, infinity:", ex.at_plus_one, ex.at_minus_one, ex.at_infinity)

v = solvability_verdict(lp)
print(v.conclusion, v.fired_rules)

# p = 5/6 makes 2(p+q)+1 an odd integer, so the first rule cannot fire
print(solvability_verdict(LegendreParams(Fraction(5, 6), Fraction(1, 6))).conclusion)

# an irrational p is settled before the pattern table is consulted
print(solvability_verdict(LegendreParams(QuadraticSurd.make(0, 1, 2), Fraction(1, 6))).fired_rules)

# the q = 1/6 family: scan p on a grid and list the possibly solvable points
hits = []
for num in range(-24, 25):
    p = Fraction(num, 6)
    try:
        if solvability_verdict(LegendreParams(p, Fraction(1, 6))).conclusion == "PossiblySolvable":
            hits.append(str(p))
    except ValueError:
        pass
print("possibly solvable at q = 1/6:", hits)
