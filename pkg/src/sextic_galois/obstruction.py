"""Logarithm detection for the second variational equations.

Variation of parameters for zeta'' - r zeta = K~ gives integrands X^-1 f2, where
X is the block-diagonal fundamental matrix of the two normal-form VE1
equations.  A nonzero coefficient of x^-1 in any component forces a logarithm.

Solutions are labelled as in the series display: zeta_11^(1) ~ x^(1/2 + 3 tau/4),
zeta_11^(2) ~ x^(1/2 - 3 tau/4), zeta_12^(1) ~ x^(5/2), zeta_12^(2) ~ x^(-3/2).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
import os

from .errors import TruncationCapExceeded
from .exactnum import MINUS_FAMILY, PLUS_FAMILY, ParamCoeff, as_rational, tau_of
from .frobenius import (
    DEFAULT_CAP,
    FrobeniusPair,
    StrandSeries,
    binomial_series,
    constant_wronskian,
    frobenius_series,
    steps_for_exponent,
)
from .variational import build_sources, normal_form, printed_r, sym, ve1_at_infinity, NormalFormEquation, x

CAP_ENV = "SEXTIC_GALOIS_TRUNCATION_CAP"
FAMILIES = (PLUS_FAMILY, MINUS_FAMILY)


def truncation_cap():
    value = os.environ.get(CAP_ENV)
    return int(value) if value else DEFAULT_CAP


# row -> (label, source, block, multiplier solution index, sign)
ROWS = {
    1: ("-z11(2)*K1", "K1", "z11", 2, -1),
    2: ("+z11(1)*K1", "K1", "z11", 1, 1),
    3: ("-z12(2)*K2", "K2", "z12", 2, -1),
    4: ("+z12(1)*K2", "K2", "z12", 1, 1),
}


@dataclass(frozen=True, order=True)
class ComponentSelector:
    """Row of X^-1 f2 and the VE1 solutions (zeta_11^(i), zeta_12^(j)) fed to K~."""

    row: int
    pair: tuple

    def __post_init__(self):
        if self.row not in ROWS or tuple(self.pair) not in {(1, 1), (1, 2), (2, 1), (2, 2)}:
            raise ValueError(f"invalid component {self.row}, {self.pair}")
        object.__setattr__(self, "pair", tuple(self.pair))

    @property
    def label(self):
        i, j = self.pair
        return f"{ROWS[self.row][0]}(z11({i}), z12({j}))"

    def __str__(self):
        return self.label


ALL_COMPONENTS = tuple(
    ComponentSelector(row, (i, j)) for row in ROWS for i in (1, 2) for j in (1, 2)
)

# The candidate list as stated in the case analysis, in selector form.
LISTED_CASES = {
    "1": (ComponentSelector(1, (1, 1)), ComponentSelector(1, (1, 2)), ComponentSelector(2, (2, 1))),
    "2": (ComponentSelector(2, (1, 2)),),
    "3": (ComponentSelector(1, (2, 2)),),
}


def zeta11_exponents(tau):
    tau = as_rational(tau)
    return Fraction(1, 2) + 3 * tau / 4, Fraction(1, 2) - 3 * tau / 4


ZETA12_EXPONENTS = (Fraction(5, 2), Fraction(-3, 2))


@lru_cache(maxsize=64)
def _normal_forms(tau, r_variant):
    op11, op12 = ve1_at_infinity(sym(tau))
    if r_variant == "derived":
        return normal_form(op11), normal_form(op12)
    if r_variant == "printed":
        n11 = NormalFormEquation(printed_r(1, sym(tau)), normal_form(op11).gauge_factor, x, "xi11")
        n12 = NormalFormEquation(printed_r(2), normal_form(op12).gauge_factor, x, "xi12")
        return n11, n12
    raise ValueError(f"unknown r variant {r_variant!r}")


@dataclass(frozen=True)
class FundamentalSystem:
    """Labelled VE1 solutions, with Wronskians after any rescaling."""

    tau: Fraction
    z11: FrobeniusPair
    z12: FrobeniusPair
    order: int

    def solution(self, block, index):
        pair = self.z11 if block == "z11" else self.z12
        return pair.first if index == 1 else pair.second


def _pair(nf, exps, order, cap, scale2=None):
    f = frobenius_series(nf, exps[0], order, cap)
    g = frobenius_series(nf, exps[1], order, cap)
    W = constant_wronskian(f, g)
    g = g.scale(1 / W.scalar())  # Wronskian 1
    if scale2 is not None:
        g = g.scale(scale2)
    return FrobeniusPair(f, g, exps, constant_wronskian(f, g))


def fundamental_system(tau, order, r_variant="derived", scale12_second=None, cap=None):
    """Wronskian-normalized pairs (optionally rescaling zeta_12^(2) afterwards).

    ``scale12_second`` multiplies the normalized zeta_12^(2); the printed
    choice x^(-3/2)(-144 - 108 H x^3 + ...) corresponds to -144 times the monic
    solution, i.e. a factor 576 on top of the W = 1 one.
    """
    tau = as_rational(tau)
    cap = truncation_cap() if cap is None else cap
    if order > cap:
        raise TruncationCapExceeded(f"order {order} exceeds truncation cap {cap}")
    return _fundamental_system(tau, order, r_variant, scale12_second, cap)


@lru_cache(maxsize=256)
def _fundamental_system(tau, order, r_variant, scale12_second, cap):
    n11, n12 = _normal_forms(tau, r_variant)
    e11 = zeta11_exponents(tau)
    if (e11[0] - e11[1]) % 3 == 0:
        raise ValueError(f"tau = {tau}: zeta_11 exponents collide modulo 3")
    z11 = _pair(n11, e11, order, cap)
    z12 = _pair(n12, ZETA12_EXPONENTS, order, cap, scale12_second)
    return FundamentalSystem(tau, z11, z12, order)


def fundamental_matrix(system):
    """4x4 block matrix X (entries StrandSeries; off-block zeros)."""
    zero = StrandSeries()
    rows = []
    for block in ("z11", "z12"):
        f, g = system.solution(block, 1), system.solution(block, 2)
        top = [f, g]
        bottom = [f.derivative(), g.derivative()]
        if block == "z11":
            rows.append(top + [zero, zero])
            rows.append(bottom + [zero, zero])
        else:
            rows.append([zero, zero] + top)
            rows.append([zero, zero] + bottom)
    return rows


def inverse_fundamental_matrix(system, require_normalized=True):
    """X^-1 = block-wise (1/W) [[g', -g], [-f', f]]."""
    zero = StrandSeries()
    rows = []
    for block in ("z11", "z12"):
        pair = system.z11 if block == "z11" else system.z12
        W = pair.wronskian
        if require_normalized and W != ParamCoeff.const(1):
            raise ValueError(f"{block} pair is not Wronskian-normalized (W = {W})")
        inv = 1 / W.scalar()
        f, g = pair.first, pair.second
        top = [g.derivative().scale(inv), (-g).scale(inv)]
        bottom = [(-f.derivative()).scale(inv), f.scale(inv)]
        if block == "z11":
            rows.append(top + [zero, zero])
            rows.append(bottom + [zero, zero])
        else:
            rows.append([zero, zero] + top)
            rows.append([zero, zero] + bottom)
    return rows


@dataclass(frozen=True)
class RowFunctional:
    """Component ``row`` of X^-1 f2: multiplier * (selected source)."""

    row: int
    label: str
    source: str
    multiplier: StrandSeries


def inverse_fundamental_rows(system, require_normalized=True):
    """The four rows of X^-1 applied to f2 = (0, K~1, 0, K~2)."""
    inv = inverse_fundamental_matrix(system, require_normalized)
    out = []
    for row, (label, source, _, _, _) in ROWS.items():
        col = 1 if source == "K1" else 3
        out.append(RowFunctional(row, label, source, inv[row - 1][col]))
    return out


def source_series(source, system, pair, steps):
    """K~ evaluated on (zeta_11^(i), zeta_12^(j)) as a strand series."""
    i, j = pair
    z11 = system.solution("z11", i)
    z12 = system.solution("z12", j)
    monomials = {"z11*z12": z11 * z12, "z11^2": z11 * z11, "z12^2": z12 * z12}
    total = None
    for name, coeff in source.coefficients.items():
        term = monomials[name].scale(coeff)
        total = term if total is None else total + term
    prefactor = binomial_series(source.prefactor_binomial_power, steps).shift(source.prefactor_x_power)
    return total * prefactor


def _lowest_source_exponent(sources, e11, e12):
    lows = []
    for src in sources:
        for name in src.coefficients:
            if name == "z11*z12":
                lows.append(e11 + e12)
            elif name == "z11^2":
                lows.append(2 * e11)
            else:
                lows.append(2 * e12)
    return min(lows) + Fraction(-3, 2)


def required_order(tau):
    """Series order making every component exact through x^-1."""
    e11 = min(zeta11_exponents(tau))
    e12 = min(ZETA12_EXPONENTS)
    sources = build_sources(tau)
    low_mult = min(e11, e12)
    low = low_mult + _lowest_source_exponent(sources, e11, e12)
    return max(steps_for_exponent(low), 1) - 1


def component_series(component, tau, order=None, r_variant="derived", scale12_second=None,
                     binomial_power=Fraction(-3, 4), cap=None):
    tau = as_rational(tau)
    order = required_order(tau) if order is None else order
    system = fundamental_system(tau, order, r_variant, scale12_second, cap)
    k1, k2 = build_sources(tau, binomial_power)
    rows = {rf.row: rf for rf in inverse_fundamental_rows(system, require_normalized=scale12_second is None)}
    rf = rows[component.row]
    source = k1 if rf.source == "K1" else k2
    return rf.multiplier * source_series(source, system, component.pair, order + 1)


def residue_of(component, k, family, **options):
    """Exact x^-1 coefficient of a component at tau = tau(k, family)."""
    tau = tau_of(k, family)
    return component_series(component, tau, **options).residue()


@dataclass(frozen=True)
class ResidueReport:
    """Residues of every component for both resonant families at one k.

    ``per_component`` maps ``(family, ComponentSelector)`` to ``a + b*d``.
    """

    k: int
    taus: dict
    per_component: dict
    any_nonzero_without_d: bool
    nonzero_requires_d: bool
    nonzero: tuple = field(default=())

    def by_family(self, family):
        return {c: v for (f, c), v in self.per_component.items() if f == family}


def residue_table(k, families=FAMILIES, **options):
    per = {}
    taus = {}
    for family in families:
        tau = tau_of(k, family)
        taus[family] = tau
        for comp in ALL_COMPONENTS:
            per[(family, comp)] = residue_of(comp, k, family, **options)
    any_a = any(bool(v.a) for v in per.values())
    requires_d = (not any_a) and any(bool(v.b) for v in per.values())
    nonzero = tuple(key for key, v in per.items() if not v.is_zero())
    return ResidueReport(int(k), taus, per, any_a, requires_d, nonzero)


def obstruction_found(report, d_nonzero):
    """Does the table force a logarithm for the given D != 0 status?"""
    return report.any_nonzero_without_d or (d_nonzero and report.nonzero_requires_d)
