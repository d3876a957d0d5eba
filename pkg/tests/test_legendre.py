from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from sextic_galois.errors import InvalidParameters
from sextic_galois.exactnum import QuadraticSurd, UnitRootExp
from sextic_galois.legendre import (
    SOLVABILITY_RULES,
    LegendreParams,
    exponents,
    monodromy_generators,
    solvability_verdict,
)
from strategies import non_integer_rationals, rationals


def lp(p, q):
    return LegendreParams(F(p), F(q))


class TestExponents:
    def test_p1_q0(self):
        e = exponents(lp(1, 0))
        assert e.at_plus_one == (F(1, 2), F(1, 2)) and e.at_infinity == (-2, 1)

    def test_sixth(self):
        e = exponents(lp(F(-1, 6), F(1, 6)))
        assert e.at_plus_one == (F(7, 12), F(5, 12))
        assert e.at_infinity == (F(-5, 6), F(-1, 6))

    def test_zero(self):
        e = exponents(lp(0, 0))
        assert e.at_minus_one == (F(1, 2), F(1, 2)) and e.at_infinity == (-1, 0)

    @given(rationals(), rationals())
    def test_sums(self, p, q):
        if (p + q).denominator == 1 and p + q < 0:
            return
        e = exponents(LegendreParams(p, q))
        assert sum(e.at_plus_one) == 1 and sum(e.at_minus_one) == 1
        assert sum(e.at_infinity) == -1


class TestMonodromy:
    def test_trivial(self):
        g = monodromy_generators(lp(0, 0))
        assert [m.u for m in g] == [UnitRootExp(1), UnitRootExp(1), UnitRootExp(0), UnitRootExp(0)]

    def test_sixth(self):
        g = monodromy_generators(lp(F(-1, 6), F(1, 6)))
        assert g[0].u.exponent == F(7, 6) and g[0].diagonal[1].exponent == F(5, 6)
        assert g[3].u == UnitRootExp(F(-1, 3))

    def test_surd(self):
        g = monodromy_generators(LegendreParams(F(0), QuadraticSurd.make(0, 1, 2)))
        assert str(g[0].u) == "exp((1 + sqrt(2))*pi*i)"


class TestVerdict:
    def test_irrational(self):
        v = solvability_verdict(LegendreParams(QuadraticSurd.make(0, 1, 2), F(1, 6)))
        assert v.conclusion == "NonSolvable" and v.fired_rules == ("NonRational",)

    def test_all_rules(self):
        v = solvability_verdict(lp(F(1, 4), F(1, 6)))
        assert v.conclusion == "NonSolvable" and v.fired_rules == SOLVABILITY_RULES
        assert v.witness["ThLeg-i"]["values"] == {"2p+1": "3/2", "2(q-p)+1": "5/6", "2(p+q)+1": "11/6"}

    def test_escape_i(self):
        v = solvability_verdict(lp(F(5, 6), F(1, 6)))
        assert v.conclusion == "PossiblySolvable" and "ThLeg-i" not in v.fired_rules
        assert v.witness["ThLeg-i"]["odd_integers"] == ["2(p+q)+1"]

    def test_q_zero(self):
        assert solvability_verdict(lp(F(1, 3), 0)).non_solvable

    @pytest.mark.parametrize("p,q,rule,matched", [
        (F(-1, 4), F(1, 2), "ThLeg-ii", True),     # 2p+1 = 1/2
        (F(-3, 10), F(2, 5), "ThLeg-iv", True),    # 2p+1 = 2/5, m = 0 even
        (F(1, 5), F(2, 5), "ThLeg-iv", False),     # 2p+1 = 7/5, m = 1 odd
        (F(1, 6), F(5, 3), "ThLeg-iii", True),     # 2p+1 = 4/3, m = 1 odd
        (F(-1, 3), F(2, 3), "ThLeg-iii", False),   # 2p+1 = 1/3, m = 0 even
        (F(1, 10), F(4, 5), "ThLeg-v", True),      # 2p+1 = 6/5, m = 1 odd
        (F(-2, 5), F(4, 5), "ThLeg-v", False),     # 2p+1 = 1/5, m = 0 even
    ])
    def test_patterns(self, p, q, rule, matched):
        v = solvability_verdict(lp(p, q))
        assert v.witness[rule]["pattern_matched"] is matched
        assert (rule in v.fired_rules) is not matched

    def test_side_condition(self):
        with pytest.raises(InvalidParameters):
            lp(F(-3, 2), F(-1, 2))

    @given(rationals(), rationals())
    def test_symmetry(self, p, q):
        def verdict(pp, qq):
            try:
                return solvability_verdict(LegendreParams(pp, qq)).conclusion
            except InvalidParameters:
                return None

        base = verdict(p, q)
        if base is None:
            return
        for other in (verdict(p, -q), verdict(-1 - p, q)):
            assert other in (base, None)

    @given(non_integer_rationals())
    def test_q_zero_corollary(self, p):
        assert solvability_verdict(LegendreParams(p, F(0))).non_solvable

    @given(st.integers(0, 30))
    def test_q_zero_integer_p(self, p):
        v = solvability_verdict(LegendreParams(F(p), F(0)))
        assert v.conclusion == "PossiblySolvable" and "ThLeg-i" not in v.fired_rules
