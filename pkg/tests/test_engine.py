from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sextic_galois.engine import INCONCLUSIVE, NON_INTEGRABLE, OUT_OF_SCOPE, Verdict, decide
from sextic_galois.exactnum import classify_tau
from sextic_galois.model import PotentialParams
from strategies import rationals

WORKED = [
    ((1, 7, 1, 0), NON_INTEGRABLE, "ThV6-i"),
    ((16, 0, 1, 0), NON_INTEGRABLE, "ThV6-ii"),
    ((30, 3, 1, 2), NON_INTEGRABLE, "ThV6-iii"),
    ((0, 0, 1, 5), NON_INTEGRABLE, "ThV6-iv"),
    ((0, 0, 1, 0), INCONCLUSIVE, None),
    ((1, 0, 0, 0), OUT_OF_SCOPE, None),
]


def key(v):
    return (v.conclusion, v.rule)


@pytest.mark.parametrize("abcd,conclusion,rule", WORKED)
def test_worked_verdicts(abcd, conclusion, rule):
    v = decide(PotentialParams(*abcd))
    assert key(v) == (conclusion, rule)
    assert v.trace


def test_negative_tau_squared():
    v = decide(PotentialParams(-10, 0, 1, 0))
    assert key(v) == (NON_INTEGRABLE, "ThV6-i")
    assert v.trace[0]["status"] == "negative"


def test_a30_realizes_k2():
    v = decide(PotentialParams(30, 0, 1, 0))
    ks = {(r["family"], r["k"]) for r in v.trace[0]["realizations"]}
    assert ("-2k+4/3", 2) in ks


def test_edge_trace_records_both_branches():
    v = decide(PotentialParams(0, 0, 1, 0))
    assert any(r["step"] == "edge_branches" for r in v.trace)


def test_trace_has_legendre_record():
    v = decide(PotentialParams(16, 0, 1, 0))
    steps = [r["step"] for r in v.trace]
    assert steps[:2] == ["classify_tau", "legendre_reduction"]
    assert steps[-1] == "rule"


def test_odd_integer_tau_warning():
    # tau^2 = 9 -> A = (81 - 4) / 2
    v = decide(PotentialParams(F(77, 2), 0, 1, 0))
    assert key(v) == (NON_INTEGRABLE, "ThV6-ii")
    assert any("odd integer" in w for w in v.warnings)


def test_verdict_invariants():
    with pytest.raises(ValueError):
        Verdict(NON_INTEGRABLE, None, [{"step": "x"}])
    with pytest.raises(ValueError):
        Verdict(INCONCLUSIVE, "ThV6-i", [{"step": "x"}])
    with pytest.raises(ValueError):
        Verdict(INCONCLUSIVE, None, [])


def test_type_check():
    with pytest.raises(TypeError):
        decide((1, 2, 3, 4))


params = st.builds(PotentialParams, rationals(), rationals(), rationals(nonzero=True), rationals())


@settings(max_examples=500)
@given(params, rationals())
def test_b_independence(p, B):
    q = PotentialParams(p.A, B, p.C, p.D, p.h)
    assert key(decide(p)) == key(decide(q))


@settings(max_examples=500)
@given(params, rationals(nonzero=True))
def test_positive_scaling(p, lam):
    lam = abs(lam)
    q = PotentialParams(lam * p.A, lam * p.B, lam * p.C, lam * p.D, p.h)
    assert key(decide(p)) == key(decide(q))


@settings(max_examples=200)
@given(st.integers(-6, 6), st.sampled_from(["2k+2/3", "-2k+4/3"]), st.integers(-3, 3))
def test_tau_sign_invariance(k, family, D):
    # A depends on tau^2 only, so both signs give the same params; check the
    # realization set is closed under tau -> -tau instead
    tau = 2 * k + F(2, 3) if family == "2k+2/3" else -2 * k + F(4, 3)
    A = (9 * tau**2 - 4) / 2
    cls = classify_tau(A, 1)
    taus = {s * cls.tau for s, _, _ in cls.realizations}
    assert tau in taus or -tau in taus
    assert {-t for t in taus} <= taus | {-t for t in taus}
    assert decide(PotentialParams(A, 0, 1, D)).non_integrable or (A == 0 and D == 0)


class TestCrossCheck:
    @pytest.mark.parametrize("A", [F(48), F(126)])
    def test_agrees_where_residues_obstruct(self, A):
        # tau = 10/3 and 16/3 (k = -1, -2 on the minus family)
        v = decide(PotentialParams(A, 0, 1, 0), cross_check=True)
        rec = v.trace[-1]
        assert rec["step"] == "residue_cross_check"
        assert rec["agrees"] and rec["residues_obstruct"]

    def test_not_run_by_default(self):
        v = decide(PotentialParams(6, 0, 1, 0))
        assert all(r["step"] != "residue_cross_check" for r in v.trace)

    @pytest.mark.xfail(strict=True, reason="residues vanish for k >= 1, so the tables cannot confirm ThV6-iii/iv there")
    @pytest.mark.parametrize("A,D", [(30, 0), (0, 5)])
    def test_agrees_for_positive_k(self, A, D):
        v = decide(PotentialParams(A, 0, 1, D), cross_check=True)
        assert v.trace[-1]["agrees"]

    def test_disagreement_is_warned(self):
        v = decide(PotentialParams(30, 0, 1, 0), cross_check=True)
        assert key(v) == (NON_INTEGRABLE, "ThV6-iii")
        assert any("disagree" in w for w in v.warnings)

    def test_cap_is_recorded(self):
        v = decide(PotentialParams(48, 0, 1, 0), cross_check=True, cap=1)
        rec = v.trace[-1]
        assert rec["complete"] is False
