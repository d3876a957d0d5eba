from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given, strategies as st

from sextic_galois.errors import LogRequired, TruncationCapExceeded
from sextic_galois.exactnum import ParamCoeff
from sextic_galois.frobenius import (
    StrandSeries,
    binomial_series,
    constant_wronskian,
    format_series,
    frobenius_pair,
    frobenius_series,
    indicial_roots,
    laurent_coefficients,
    laurent_coefficients_symbolic,
    normalize_wronskian,
    plug_back_residual,
    recurrence,
    steps_for_exponent,
    wronskian_series,
)
from sextic_galois.variational import H, NormalFormEquation, normal_form, sym, tau, ve1_at_infinity, x
from strategies import rationals

R2 = normal_form(ve1_at_infinity()[1])


def r1(t):
    return normal_form(ve1_at_infinity(sym(F(t)))[0])


R1_SYM = normal_form(ve1_at_infinity()[0])


class TestIndicial:
    def test_r2(self):
        assert indicial_roots(R2) == (F(5, 2), F(-3, 2))

    def test_r1_symbolic(self):
        roots = indicial_roots(R1_SYM)
        assert [sympy.simplify(r - e) for r, e in zip(roots, (F(1, 2) + 3 * tau / 4, F(1, 2) - 3 * tau / 4))] == [0, 0]

    def test_zero(self):
        assert set(indicial_roots(NormalFormEquation(sympy.Integer(0), 1, x))) == {0, 1}

    def test_edge_tau_has_vanishing_c0(self):
        assert indicial_roots(r1(F(2, 3))) == (1, 0)

    @given(st.integers(-12, 12))
    def test_roots_sum_to_one(self, n):
        a, b = indicial_roots(r1(F(n, 3)))
        assert a + b == 1

    def test_bad_pole(self):
        with pytest.raises(ValueError):
            laurent_coefficients(NormalFormEquation(1 / x**3, 1, x), 2)


class TestSeries:
    def test_r2_leading(self):
        s = frobenius_series(R2, F(5, 2), 3)
        assert s.coefficient(F(11, 2)) == ParamCoeff.monomial(F(-3, 28), 1)

    def test_r2_second(self):
        s = frobenius_series(R2, F(-3, 2), 3)
        assert s.coefficient(F(3, 2)) == ParamCoeff.monomial(F(3, 4), 1)
        # the printed normalization -144 - 108 H x^3 has the same ratio
        assert F(108, 144) == F(3, 4)

    def test_c1(self):
        c = laurent_coefficients(R2, 2)
        assert c[0] == ParamCoeff.const(F(60, 16)) and c[1] == ParamCoeff.monomial(F(-9, 4), 1)

    def test_r1_symbolic_first_coefficient(self):
        c = laurent_coefficients_symbolic(R1_SYM, 2)
        rho = F(1, 2) + 3 * tau / 4
        a = recurrence(c, rho, 1)
        expected = -(9 * tau**2 - 28) * H / (144 + 72 * tau)
        assert sympy.simplify(a[1] - expected) == 0

    @pytest.mark.parametrize("t", [F(-14, 3), F(4, 3), F(16, 3), F(1, 5)])
    def test_r1_first_coefficient_rational(self, t):
        rho = F(1, 2) + 3 * t / 4
        s = frobenius_series(r1(t), rho, 2)
        expected = -(9 * t * t - 28) / (144 + 72 * t)
        assert s.coefficient(rho + 3) == ParamCoeff.monomial(expected, 1)

    def test_resonance_tau_2(self):
        # roots 2 and -1 differ by 3: the recurrence for -1 hits the resonance
        nf = r1(2)
        assert indicial_roots(nf) == (2, -1)
        with pytest.raises(LogRequired) as info:
            frobenius_series(nf, -1, 3)
        assert info.value.step == 1
        assert frobenius_pair(nf, 3).log_flag

    @pytest.mark.parametrize("nf,order", [(R2, 4), (r1(F(-14, 3)), 4), (r1(F(4, 3)), 3)])
    def test_plug_back(self, nf, order):
        for rho in indicial_roots(nf):
            s = frobenius_series(nf, rho, order)
            res = plug_back_residual(nf, s)
            assert res.lowest_exponent() > rho + 3 * order - 2

    def test_cap(self):
        with pytest.raises(TruncationCapExceeded):
            frobenius_series(R2, F(5, 2), 10, cap=5)

    def test_exact_region(self):
        s = frobenius_series(R2, F(5, 2), 1)
        assert s.exact_below == F(5, 2) + 6
        with pytest.raises(TruncationCapExceeded):
            s.coefficient(F(17, 2))


class TestPairs:
    def test_zeta12_wronskian(self):
        pair = frobenius_pair(R2, 4)
        assert pair.wronskian == ParamCoeff.const(-4)
        norm = normalize_wronskian(pair)
        assert norm.wronskian == ParamCoeff.const(1)
        assert norm.second == pair.second.scale(F(-1, 4))

    def test_zeta11_wronskian(self):
        pair = frobenius_pair(r1(F(-14, 3)), 4)
        assert pair.exponents == (4, -3)
        assert pair.wronskian == ParamCoeff.const(-7)

    def test_idempotent(self):
        norm = normalize_wronskian(frobenius_pair(R2, 3))
        assert normalize_wronskian(norm) == norm

    def test_refuses_log(self):
        with pytest.raises(ValueError):
            normalize_wronskian(frobenius_pair(r1(2), 3))

    @pytest.mark.parametrize("t", [F(-14, 3), F(4, 3), F(8, 3), F(-2, 3)])
    def test_constant_wronskian(self, t):
        norm = normalize_wronskian(frobenius_pair(r1(t), 5))
        W = wronskian_series(norm.first, norm.second)
        assert W.terms() == {F(0): ParamCoeff.const(1)}

    def test_first_root_selection(self):
        pair = frobenius_pair(R2, 2, first_root=F(-3, 2))
        assert pair.exponents == (F(-3, 2), F(5, 2))


def series(draw_terms):
    return StrandSeries.from_terms({F(e): ParamCoeff(tuple(c)) for e, c in draw_terms.items()})


terms = st.dictionaries(
    st.integers(-6, 6).map(lambda n: F(n, 2)),
    st.lists(rationals(), min_size=1, max_size=3),
    max_size=4,
)


class TestStrandSeries:
    @given(terms, terms)
    def test_commutative(self, a, b):
        sa, sb = series(a), series(b)
        assert sa * sb == sb * sa
        assert sa + sb == sb + sa

    @given(terms, terms, terms)
    def test_distributive(self, a, b, c):
        sa, sb, sc = series(a), series(b), series(c)
        assert sa * (sb + sc) == sa * sb + sa * sc

    @given(terms, terms)
    def test_product_rule(self, a, b):
        sa, sb = series(a), series(b)
        assert (sa * sb).derivative() == sa.derivative() * sb + sa * sb.derivative()

    @given(terms, terms)
    def test_evaluate(self, a, b):
        sa, sb = series(a), series(b)
        xv, Hv = F(1, 3), F(2)
        assert (sa * sb).evaluate(xv, Hv) == pytest.approx(sa.evaluate(xv, Hv) * sb.evaluate(xv, Hv), rel=1e-9, abs=1e-9)

    @given(terms)
    def test_strands_distinct_mod_3(self, a):
        bases = series(a).bases()
        assert len({b % 3 for b in bases}) == len(bases)

    def test_truncation_tracks_products(self):
        a = frobenius_series(R2, F(-3, 2), 1)  # exact below 9/2
        b = StrandSeries.monomial(F(1, 2))
        assert (a * b).exact_below == 5

    def test_binomial(self):
        s = binomial_series(F(-3, 4), 3)
        assert s.coefficient(3) == ParamCoeff.monomial(F(-3, 4), 1)
        assert s.coefficient(6) == ParamCoeff.monomial(F(21, 32), 2)

    def test_format(self):
        assert format_series(StrandSeries.monomial(F(5, 2))) == "1*x^(5/2)"

    def test_residue(self):
        s = StrandSeries.from_terms({F(-1): ParamCoeff.const(3), F(2): ParamCoeff.const(1)})
        assert s.residue() == ParamCoeff.const(3)


def test_steps_for_exponent():
    assert steps_for_exponent(F(-7, 2)) == 1
    assert steps_for_exponent(F(-4)) == 2
    assert steps_for_exponent(F(0)) == 0
