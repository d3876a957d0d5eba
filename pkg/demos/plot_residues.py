"""
Residues of the second variational equation
===========================================

Variation of parameters turns the second variational equation into
integrals of X^-1 f2.  A nonzero x^-1 coefficient in any component forces
a logarithm.  Residues are exact polynomials in H, linear in d = D/C.
"""

from sextic_galois import ComponentSelector, residue_of, residue_table

for k in range(-2, 3):
    rep = residue_table(k)
    print(f"k = {k:2d}: taus {[str(t) for t in rep.taus.values()]}, "
          f"nonzero without d: {rep.any_nonzero_without_d}, needs d: {rep.nonzero_requires_d}")

# the individual components at k = 0 on the family -2k + 4/3 (tau = 4/3)
for (family, comp), value in residue_table(0).per_component.items():
    if family == "-2k+4/3" and not value.is_zero():
        print(f"  {comp.label}: {value}")

# rescaling the second zeta_12 solution changes values but not which vanish
comp = ComponentSelector(3, (2, 1))
print(residue_of(comp, 0, "-2k+4/3"), "vs", residue_of(comp, 0, "-2k+4/3", scale12_second=576))
