"""The sextic Hamiltonian family and its invariant plane r = p_r = 0.

    H = (p_r^2 + p_z^2)/2 + r^6 + A r^2 z^4 + D r^3 z^3 + B r^4 z^2 + C z^6

All functions accept exact rationals or floats (mpmath included); one formula
source serves both.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import sympy

from .errors import OutOfScope
from .exactnum import as_rational, to_numeric


@dataclass(frozen=True)
class PotentialParams:
    A: Fraction
    B: Fraction
    C: Fraction
    D: Fraction
    h: Fraction = Fraction(1)

    def __post_init__(self):
        for name in ("A", "B", "C", "D", "h"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))

    @property
    def H(self):
        """h**3, the only way h enters the reduced equations."""
        return self.h**3

    @property
    def d(self):
        if self.C == 0:
            raise OutOfScope("C = 0: d = D/C undefined")
        return self.D / self.C


class PhaseState(NamedTuple):
    r: object
    p_r: object
    z: object
    p_z: object


def _coerce(params, like):
    # Fractions stay exact; anything else (float, mpf, sympy) pulls params to that type.
    if isinstance(like, (int, Fraction)):
        return params.A, params.B, params.C, params.D
    if isinstance(like, sympy.Basic):
        return tuple(sympy.Rational(v.numerator, v.denominator) for v in (params.A, params.B, params.C, params.D))
    kind = type(like)
    return tuple(to_numeric(v, kind) for v in (params.A, params.B, params.C, params.D))


def potential(r, z, params):
    like = z if isinstance(r, (int, Fraction)) else r
    A, B, C, D = _coerce(params, like)
    return r**6 + A * r**2 * z**4 + D * r**3 * z**3 + B * r**4 * z**2 + C * z**6


def hamiltonian(state, params):
    r, p_r, z, p_z = state
    return (p_r**2 + p_z**2) / 2 + potential(r, z, params)


def vector_field(state, params):
    r, p_r, z, p_z = state
    like = next((v for v in state if not isinstance(v, (int, Fraction))), r)
    A, B, C, D = _coerce(params, like)
    dp_r = -(2 * A * r * z**4 + 4 * B * r**3 * z**2 + 3 * D * r**2 * z**3 + 6 * r**5)
    dp_z = -(4 * A * r**2 * z**3 + 2 * B * r**4 * z + 6 * C * z**5 + 3 * D * r**3 * z**2)
    return PhaseState(p_r, dp_r, p_z, dp_z)


def manifold_coordinates(state, params):
    """(w, w', w'') with w = z^2, from a state on the plane r = p_r = 0."""
    _, _, z, p_z = state
    dz = vector_field(state, params)
    w = z * z
    dw = 2 * z * p_z
    ddw = 2 * p_z * p_z + 2 * z * dz.p_z
    return w, dw, ddw


def manifold_residuals(states, params):
    """Max deviation from the reduced laws along a trajectory in the plane.

    Returns ``(first, second)`` = max |w'^2 + 8C(w^4 + h^3 w)| and
    max |w'' + 4C(4w^3 + h^3)|.
    """
    if params.C == 0:
        raise OutOfScope("C = 0: no invariant curve of the required form")
    first = second = 0
    for state in states:
        w, dw, ddw = manifold_coordinates(state, params)
        if isinstance(w, (int, Fraction)):
            C, H = params.C, params.H
        else:
            C, H = to_numeric(params.C, type(w)), to_numeric(params.H, type(w))
        first = max(first, abs(dw * dw + 8 * C * (w**4 + H * w)))
        second = max(second, abs(ddw + 4 * C * (4 * w**3 + H)))
    return first, second


def manifold_state(z, params, direction=1):
    """State on the invariant plane with energy constant h: p_z^2 = -2C(z^6 + h^3).

    Works with floats/mpmath; raises ValueError when no real momentum exists.
    """
    import mpmath

    mpf = mpmath.mpf
    z = to_numeric(z, mpf)
    val = -2 * to_numeric(params.C, mpf) * (z**6 + to_numeric(params.H, mpf))
    if val < 0:
        raise ValueError("no real orbit through this point on the invariant curve")
    return PhaseState(mpf(0), mpf(0), z, direction * mpmath.sqrt(val))
