"""First and second variational equations along the invariant plane, and the
transforms that bring them to a form Frobenius series can handle.

Rational functions are sympy expressions kept in reduced numerator/denominator
form (``sympy.cancel`` after every step).  ``H`` is the symbol for h**3 and
``d`` for D/C; both stay symbolic unless a caller specializes them.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .errors import OutOfScope
from .exactnum import ParamCoeff, QuadraticSurd, as_rational, classify_tau
from .legendre import LegendreParams

x, w, z = sympy.symbols("x w z")
H, d, tau = sympy.symbols("H d tau")
h = sympy.Symbol("h")

Q_LEGENDRE = Fraction(1, 6)


def sym(q):
    """Fraction -> sympy.Rational (other values pass through)."""
    if isinstance(q, Fraction):
        return sympy.Rational(q.numerator, q.denominator)
    return sympy.sympify(q)


def reduce_rational(expr):
    return sympy.cancel(sympy.together(expr))


@dataclass(frozen=True)
class Singularity:
    point: object
    exponents: tuple


@dataclass(frozen=True)
class FuchsianOperator:
    """The operator y'' + a(var) y' + b(var) y."""

    a: object
    b: object
    var: object
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "a", reduce_rational(self.a))
        object.__setattr__(self, "b", reduce_rational(self.b))

    def specialize(self, **values):
        """Substitute values for H, tau or d (by symbol name)."""
        subs = {sympy.Symbol(k): sym(v) for k, v in values.items()}
        return FuchsianOperator(self.a.subs(subs), self.b.subs(subs), self.var, self.name)

    def apply(self, y):
        """Apply the operator to an expression in ``var``."""
        v = self.var
        return sympy.diff(y, v, 2) + self.a * sympy.diff(y, v) + self.b * y

    def finite_singular_points(self):
        pts = set()
        for coeff in (self.a, self.b):
            den = sympy.denom(coeff)
            pts.update(sympy.roots(sympy.Poly(den, self.var)).keys())
        return sorted(pts, key=sympy.default_sort_key)

    def pole_order(self, coeff, point):
        v = self.var
        num, den = sympy.fraction(coeff)
        num_p, den_p = sympy.Poly(num, v), sympy.Poly(den, v)
        if num_p.is_zero:
            return 0
        factor = sympy.Poly(v - point, v)
        order = 0
        while den_p.degree() > 0 and den_p.rem(factor).is_zero:
            den_p = den_p.quo(factor)
            order += 1
        while order > 0 and num_p.degree() >= 0 and not num_p.is_zero and num_p.rem(factor).is_zero:
            num_p = num_p.quo(factor)
            order -= 1
        return order

    def order_at_infinity(self, coeff):
        """Degree of denominator minus degree of numerator (vanishing order at infinity)."""
        num, den = sympy.fraction(coeff)
        if num == 0:
            return sympy.oo
        return sympy.degree(den, self.var) - sympy.degree(num, self.var)

    def is_fuchsian(self):
        for pt in self.finite_singular_points():
            if self.pole_order(self.a, pt) > 1 or self.pole_order(self.b, pt) > 2:
                return False
        return self.order_at_infinity(self.a) >= 1 and self.order_at_infinity(self.b) >= 2

    def local_exponents(self, point):
        """Roots of the indicial equation at a finite point or at ``sympy.oo``."""
        v, rho = self.var, sympy.Symbol("rho")
        if point is sympy.oo:
            # y ~ var**(-rho): rho(rho+1) - a1 rho + b2 = 0
            a1 = sympy.limit(self.a * v, v, sympy.oo)
            b2 = sympy.limit(self.b * v**2, v, sympy.oo)
            eq = rho * (rho + 1) - a1 * rho + b2
        else:
            a0 = sympy.limit(self.a * (v - point), v, point)
            b0 = sympy.limit(self.b * (v - point) ** 2, v, point)
            eq = rho * (rho - 1) + a0 * rho + b0
        roots = sympy.solve(sympy.expand(eq), rho)
        if len(roots) == 1:
            roots = roots * 2
        return tuple(sympy.simplify(r) for r in roots)

    def singularities(self):
        pts = [Singularity(p, self.local_exponents(p)) for p in self.finite_singular_points()]
        pts.append(Singularity(sympy.oo, self.local_exponents(sympy.oo)))
        return pts


@dataclass(frozen=True)
class NormalFormEquation:
    """zeta'' - r zeta = 0, with xi = gauge_factor * zeta."""

    r: object
    gauge_factor: object
    var: object
    name: str = ""

    def specialize(self, **values):
        subs = {sympy.Symbol(k): sym(v) for k, v in values.items()}
        return NormalFormEquation(
            reduce_rational(self.r.subs(subs)), self.gauge_factor.subs(subs), self.var, self.name
        )

    def numerator_denominator(self):
        num, den = sympy.fraction(sympy.factor_terms(self.r))
        return sympy.expand(num), den


def build_ve1(params, symbolic_h=True):
    """The (xi_11, xi_12) first variational operators in the variable w.

    With ``symbolic_h`` the constant h**3 stays as the symbol ``H``.
    """
    if params.C == 0:
        raise OutOfScope("C = 0: no invariant manifold")
    if params.h == 0:
        raise OutOfScope("h = 0: the particular solution degenerates")
    Hs = H if symbolic_h else sym(params.H)
    a = (4 * w**3 + Hs) / (2 * w * (w**3 + Hs))
    b11 = -sym(params.A / (4 * params.C)) * w / (w**3 + Hs)
    b12 = -sympy.Rational(15, 4) * w / (w**3 + Hs)
    return FuchsianOperator(a, b11, w, "xi11"), FuchsianOperator(a, b12, w, "xi12")


def ve1_singular_points(params):
    """The five singular points 0, -h, h(1 +- sqrt(3) i)/2, infinity."""
    hv = sym(params.h)
    return [
        sympy.Integer(0),
        -hv,
        hv * (1 + sympy.sqrt(3) * sympy.I) / 2,
        hv * (1 - sympy.sqrt(3) * sympy.I) / 2,
        sympy.oo,
    ]


def ve1_at_infinity(tau_value=tau):
    """VE1 in x = 1/w written through tau, as printed for the xi_11 equation.

    b_11 = -((9 tau^2 - 4)/16) / (x^2 (H x^3 + 1)).  Its exponents at x = 0 are
    1/2 +- 3 tau/4, the ones the resonance analysis is built on.
    """
    t = sym(tau_value)
    a = 3 * H * x**2 / (2 * (H * x**3 + 1))
    b11 = -((9 * t**2 - 4) / 16) / (x**2 * (H * x**3 + 1))
    b12 = -sympy.Rational(15, 4) / (x**2 * (H * x**3 + 1))
    return FuchsianOperator(a, b11, x, "xi11"), FuchsianOperator(a, b12, x, "xi12")


def transform_to_infinity(op, new_var=None):
    """Substitute var = 1/new_var.

    y_ww = x^4 y_xx + 2 x^3 y_x and y_w = -x^2 y_x give
    a_new = 2/x - a(1/x)/x^2 and b_new = b(1/x)/x^4.
    """
    old = op.var
    new = new_var if new_var is not None else (x if old == w else w)
    a_new = 2 / new - op.a.subs(old, 1 / new) / new**2
    b_new = op.b.subs(old, 1 / new) / new**4
    return FuchsianOperator(a_new, b_new, new, op.name)


def normal_form(op):
    """r = a'/2 + a^2/4 - b and the gauge factor exp(-1/2 int a)."""
    v = op.var
    r = sympy.diff(op.a, v) / 2 + op.a**2 / 4 - op.b
    if op.a == 0:
        gauge = sympy.Integer(1)
    else:
        gauge = sympy.simplify(sympy.exp(-sympy.integrate(op.a, v) / 2))
    return NormalFormEquation(reduce_rational(r), gauge, v, op.name)


def normal_form_roundtrip(op, nf):
    """Residual of transforming zeta'' - r zeta back to the original equation.

    For xi = g*zeta, L(xi) = g*(zeta'' - r zeta) identically; returns the
    rational function L(g*zeta)/g - (zeta'' - r*zeta) with zeta generic,
    which must cancel to zero.
    """
    v = op.var
    f = sympy.Function("zeta")(v)
    g = nf.gauge_factor
    lhs = op.apply(g * f) / g
    rhs = sympy.diff(f, v, 2) - nf.r * f
    return sympy.simplify(sympy.expand(lhs - rhs))


def printed_r(which, tau_value=tau):
    """r_1 / r_2 exactly as displayed alongside the normal-form equations."""
    t = sym(tau_value)
    den = 16 * x**2 * (H * x**3 + 1) ** 2
    if which == 1:
        return (-(H**2) * x**6 + H * (9 * t**2 + 20) * x**3 + 9 * t**2 - 4) / den
    if which == 2:
        return (-(H**2) * x**6 + 84 * H * x**3 + 60) / den
    raise ValueError("which must be 1 or 2")


def r_numerator_over_common_denominator(r):
    """Numerator of r when written over 16 x^2 (H x^3 + 1)^2."""
    return sympy.expand(sympy.cancel(r * 16 * x**2 * (H * x**3 + 1) ** 2))


@dataclass(frozen=True)
class LegendreReduction:
    """p = -1/2 +- tau/2, q = 1/6 for both sign branches.

    ``branches`` maps sign -> LegendreParams, or to None with a reason in
    ``excluded`` when p + q is a negative integer.
    """

    tau_class: object
    q: Fraction
    branches: dict
    excluded: dict = field(default_factory=dict)


def reduce_to_legendre(params):
    cls = classify_tau(params.A, params.C)
    if cls.status == "negative":
        raise OutOfScope("tau^2 < 0: the Legendre parameter p is not real")
    branches, excluded = {}, {}
    for sign in (1, -1):
        if cls.rational:
            p = Fraction(-1, 2) + sign * cls.tau / 2
        else:
            p = QuadraticSurd.make(Fraction(-1, 2), Fraction(sign, 2), cls.tau_squared)
        try:
            branches[sign] = LegendreParams(p, Q_LEGENDRE)
        except ValueError as exc:
            branches[sign] = None
            excluded[sign] = str(exc)
    return LegendreReduction(cls, Q_LEGENDRE, branches, excluded)


def legendre_constant(p):
    """p(p+1), exact for rational or surd p."""
    return p * (p + 1)


def derive_legendre_form(params):
    """Carry out z^2 = 1 + w^3/h^3, xi = w^(1/4) u(z) on the xi_11 operator.

    Independent of the tau bookkeeping: returns ``(q_squared, p_times_p_plus_1)``
    read off the resulting equation
        u'' - 2z/(1-z^2) u' + (P/(1-z^2) - Q/(1-z^2)^2) u = 0.
    """
    op, _ = build_ve1(params, symbolic_h=False)
    hv = sym(params.H)
    u0, u1, u2 = sympy.symbols("u0 u1 u2")
    ww = sympy.Symbol("ww", positive=True)
    a = op.a.subs(w, ww)
    b = op.b.subs(w, ww)
    zz = sympy.sqrt(1 + ww**3 / hv)
    m = ww ** sympy.Rational(1, 4)
    zp, zpp = sympy.diff(zz, ww), sympy.diff(zz, ww, 2)
    mp, mpp = sympy.diff(m, ww), sympy.diff(m, ww, 2)
    xi0 = m * u0
    xi1 = mp * u0 + m * u1 * zp
    xi2 = mpp * u0 + 2 * mp * u1 * zp + m * (u2 * zp**2 + u1 * zpp)
    expr = sympy.expand(xi2 + a * xi1 + b * xi0)
    lead = expr.coeff(u2)
    c0 = sympy.simplify(expr.coeff(u0) / lead)
    zs = sympy.Symbol("zs", positive=True)
    # w^3 = h^3 (z^2 - 1)
    c0z = sympy.cancel(sympy.simplify(c0.subs(ww, (hv * (zs**2 - 1)) ** sympy.Rational(1, 3))))
    # c0 = P/(1-z^2) - Q/(1-z^2)^2  =>  c0*(1-z^2)^2 = P(1-z^2) - Q
    poly = sympy.Poly(sympy.expand(sympy.cancel(c0z * (1 - zs**2) ** 2)), zs)
    s = sympy.Symbol("s")
    # rewrite in s = 1 - z^2
    in_s = sympy.Poly(sympy.expand(poly.as_expr().subs(zs**2, 1 - s)), s)
    coeffs = dict(zip([m_[0] for m_ in in_s.monoms()], in_s.coeffs()))
    q_sq = -coeffs.get(0, 0)
    pp1 = coeffs.get(1, 0)
    extra = {k: v for k, v in coeffs.items() if k > 1 and v != 0}
    if extra:
        raise ValueError(f"unexpected terms after substitution: {extra}")
    to_frac = lambda v: Fraction(int(sympy.numer(v)), int(sympy.denom(v)))
    return to_frac(q_sq), to_frac(pp1)


@dataclass(frozen=True)
class SourceTerm:
    """Forcing of a normal-form VE2 equation.

    ``coefficients`` maps a bilinear monomial name (``"z11*z12"``, ``"z11^2"``,
    ``"z12^2"``) to its ParamCoeff; every term shares the prefactor
    x^prefactor_x_power * (H x^3 + 1)^prefactor_binomial_power.
    """

    name: str
    coefficients: dict
    prefactor_x_power: Fraction = Fraction(-3, 2)
    prefactor_binomial_power: Fraction = Fraction(-3, 4)


def build_sources(tau_value, binomial_power=Fraction(-3, 4)):
    """K~2^(1) and K~2^(2) for rational tau, with d = D/C kept symbolic."""
    t = as_rational(tau_value)
    g = -(9 * t * t - 4) / 2
    k1 = {}
    if g != 0:
        k1["z11*z12"] = ParamCoeff.const(g)
    k1["z11^2"] = ParamCoeff((), (Fraction(-3, 8),))
    k2 = {}
    if g != 0:
        k2["z11^2"] = ParamCoeff.const(g)
    k2["z12^2"] = ParamCoeff.const(Fraction(-15, 2))
    bp = Fraction(binomial_power)
    return (
        SourceTerm("K1", k1, Fraction(-3, 2), bp),
        SourceTerm("K2", k2, Fraction(-3, 2), bp),
    )
