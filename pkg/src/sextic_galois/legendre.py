"""Solvability tests for the associated Legendre equation

    (1 - z^2) w'' - 2 z w' + (p(p+1) - q^2/(1 - z^2)) w = 0

with exact rational or quadratic-surd parameters p, q.

The local exponents at z = +-1 are (1 +- q)/2 and at infinity (-p-1, p).
Non-solvability is decided from (a) irrationality of p or q, which makes the
local monodromy generators non-commuting, and (b) a table of
five exponent conditions for hypergeometric solvability.  Every check is
exact; no search over integers.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidParameters
from .exactnum import QuadraticSurd, TriangularMonodromy, UnitRootExp, is_rational

NON_RATIONAL = "NonRational"
SOLVABILITY_RULES = ("ThLeg-i", "ThLeg-ii", "ThLeg-iii", "ThLeg-iv", "ThLeg-v")


@dataclass(frozen=True)
class LegendreParams:
    p: object
    q: object

    def __post_init__(self):
        for name in ("p", "q"):
            v = getattr(self, name)
            if isinstance(v, int):
                object.__setattr__(self, name, Fraction(v))
            elif not isinstance(v, (Fraction, QuadraticSurd)):
                raise TypeError(f"{name} must be a Fraction or QuadraticSurd")
        s = _try_add(self.p, self.q)
        if s is not None and is_rational(s) and s < 0 and s.denominator == 1:
            raise InvalidParameters(f"p + q = {s} is a negative integer")

    @property
    def rational(self):
        return is_rational(self.p) and is_rational(self.q)


def _try_add(a, b):
    try:
        return a + b
    except TypeError:
        # sqrt(m) + sqrt(n) with distinct square classes is irrational
        return None


@dataclass(frozen=True)
class ExponentData:
    at_plus_one: tuple
    at_minus_one: tuple
    at_infinity: tuple


def exponents(params):
    p, q = params.p, params.q
    finite = ((1 + q) * Fraction(1, 2), (1 - q) * Fraction(1, 2))
    return ExponentData(finite, finite, (-p - 1, p))


def monodromy_generators(params):
    """Local monodromy generators at +1, -1 (two) and infinity (two)."""
    p, q = params.p, params.q
    exps = (1 + q, 1 - q, -2 * (1 + p), 2 * p)
    return [
        TriangularMonodromy((UnitRootExp(e), UnitRootExp(-e)), f"alpha{j}")
        for j, e in enumerate(exps, start=1)
    ]


def _is_odd_integer(x):
    return x.denominator == 1 and x.numerator % 2 == 1


def _offset_integer(v, shift, parity=None):
    """Is v - shift an integer m, with m of the given parity (None = any)?"""
    m = v - shift
    if m.denominator != 1:
        return False
    return parity is None or m.numerator % 2 == parity


def _pattern_matches(p, q, p_shift, parity, q_shift):
    """Does (p, q) match p = (-1 +- (p_shift + m))/2, q = +-(q_shift + l)?

    Solving for m gives 2p + 1 = +-(p_shift + m); l only needs to exist.
    """
    v = 2 * p + 1
    p_hit = _offset_integer(v, p_shift, parity) or _offset_integer(-v, p_shift, parity)
    q_hit = _offset_integer(q, q_shift) or _offset_integer(-q, q_shift)
    return p_hit and q_hit


# (p shift, parity of m or None, q shift) for items ii..v
_PATTERNS = {
    "ThLeg-ii": (Fraction(1, 2), None, Fraction(1, 2)),
    "ThLeg-iii": (Fraction(1, 3), 1, Fraction(2, 3)),
    "ThLeg-iv": (Fraction(2, 5), 0, Fraction(2, 5)),
    "ThLeg-v": (Fraction(1, 5), 1, Fraction(4, 5)),
}


@dataclass(frozen=True)
class SolvabilityVerdict:
    """``conclusion`` is ``"NonSolvable"`` or ``"PossiblySolvable"``.

    ``fired_rules`` lists the rules that hold; ``witness`` maps each evaluated
    rule to the arithmetic behind it.
    """

    conclusion: str
    fired_rules: tuple
    witness: dict = field(default_factory=dict)

    @property
    def non_solvable(self):
        return self.conclusion == "NonSolvable"


def solvability_verdict(params):
    p, q = params.p, params.q
    if not params.rational:
        irr = [n for n, v in (("p", p), ("q", q)) if not is_rational(v)]
        return SolvabilityVerdict("NonSolvable", (NON_RATIONAL,), {NON_RATIONAL: {"irrational": irr}})

    witness = {}
    fired = []
    vals = {"2p+1": 2 * p + 1, "2(q-p)+1": 2 * (q - p) + 1, "2(p+q)+1": 2 * (p + q) + 1}
    odd = [k for k, v in vals.items() if _is_odd_integer(v)]
    witness["ThLeg-i"] = {"values": {k: str(v) for k, v in vals.items()}, "odd_integers": odd}
    if not odd:
        fired.append("ThLeg-i")
    for rule, (p_shift, parity, q_shift) in _PATTERNS.items():
        matched = _pattern_matches(p, q, p_shift, parity, q_shift)
        witness[rule] = {"pattern_matched": matched}
        if not matched:
            fired.append(rule)
    conclusion = "NonSolvable" if len(fired) == len(SOLVABILITY_RULES) else "PossiblySolvable"
    return SolvabilityVerdict(conclusion, tuple(fired), witness)
