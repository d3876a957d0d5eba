"""
Exact Frobenius series at infinity
==================================

After moving the singular point at infinity to x = 0 and removing the
first-derivative term, each variational equation becomes zeta'' = r zeta.
Its local solutions are series in x^3 with exact rational coefficients
that are polynomials in H = h^3.
"""

from fractions import Fraction

from sextic_galois.frobenius import frobenius_pair, indicial_roots, normalize_wronskian
from sextic_galois.variational import normal_form, sym, ve1_at_infinity

op11, op12 = ve1_at_infinity(sym(Fraction(-14, 3)))
nf = normal_form(op12)
print("r =", nf.r)
print("indicial roots:", indicial_roots(nf))

pair = normalize_wronskian(frobenius_pair(nf, 3))
print("first :", pair.first)
print("second:", pair.second)
print("Wronskian:", pair.wronskian)

# the xi_11 equation depends on tau; at tau = -14/3 the exponents are 4 and -3
nf11 = normal_form(op11)
print("xi_11 exponents:", indicial_roots(nf11))
print(frobenius_pair(nf11, 2).first)
