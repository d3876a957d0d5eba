"""
Checking the series numerically
===============================

The exact series are compared with a high-precision Runge-Kutta
continuation of zeta'' = r zeta.  The same integrator also checks energy
conservation for the full Hamiltonian flow.
"""

from fractions import Fraction

from sextic_galois import PotentialParams
from sextic_galois.frobenius import frobenius_pair
from sextic_galois.numeric import IntegrationConfig, energy_drift, validate_pair
from sextic_galois.variational import normal_form, ve1_at_infinity

nf = normal_form(ve1_at_infinity()[1])
rep = validate_pair(nf, frobenius_pair(nf, 12), (Fraction(1, 100), Fraction(1, 10)))
print("deviations:", [float(d) for d in rep.deviations])
print("|W - 1|:", float(rep.wronskian_deviation), "steps:", rep.steps)

# loosening the tolerance shows up directly in the deviations
loose = validate_pair(nf, frobenius_pair(nf, 12), (Fraction(1, 100), Fraction(1, 10)),
                      IntegrationConfig(rtol=1e-8, atol=1e-8))
print("at 1e-8:", [float(d) for d in loose.deviations])

drift = energy_drift(PotentialParams(1, 1, 1, 1), (0.1, 0, 0.2, 0), 10)
print("relative energy drift over t in [0, 10]:", float(drift["relative"]))
