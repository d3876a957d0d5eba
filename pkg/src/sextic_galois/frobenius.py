"""Exact Frobenius series for zeta'' = r(x) zeta at the regular singular point x = 0.

Every r handled here has the shape x^-2 * R(x^3) with R analytic at 0, so a
solution is x^rho * (1 + a_1 x^3 + a_2 x^6 + ...).  Coefficients live in the
ring Q[H] (+ Q[H] d once sources enter), see :class:`~.exactnum.ParamCoeff`.

A :class:`StrandSeries` is a finite sum of such lattices ("strands"), one per
residue class of the base exponent modulo 3.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .errors import LogRequired, TruncationCapExceeded
from .exactnum import ParamCoeff, to_numeric

STEP = 3
DEFAULT_CAP = 200


def _class_key(e):
    # canonical representative of e modulo STEP, in [0, STEP)
    return e - STEP * math.floor(e / STEP)


class StrandSeries:
    """Sum over strands of c_n x^(base + 3n), exact for exponents < exact_below.

    ``exact_below`` is None for a finite sum known exactly.
    """

    __slots__ = ("strands", "exact_below")

    def __init__(self, strands=None, exact_below=None):
        merged = {}
        for base, coeffs in (strands or {}).items():
            base = Fraction(base)
            for n, c in coeffs.items():
                _accumulate(merged, base + STEP * n, c)
        self.exact_below = None if exact_below is None else Fraction(exact_below)
        self.strands = _regroup(merged, self.exact_below)

    @classmethod
    def from_terms(cls, terms, exact_below=None):
        """Build from ``{exponent: coefficient}``."""
        return cls({e: {0: c} for e, c in terms.items()}, exact_below)

    @classmethod
    def monomial(cls, exponent, coeff=1):
        return cls.from_terms({Fraction(exponent): ParamCoeff.coerce(coeff)})

    def terms(self):
        """``{exponent: coefficient}`` for every stored (nonzero) term."""
        out = {}
        for base, coeffs in self.strands.items():
            for n, c in coeffs.items():
                out[base + STEP * n] = c
        return dict(sorted(out.items()))

    def bases(self):
        return sorted(self.strands)

    def lowest_exponent(self):
        t = self.terms()
        return min(t) if t else None

    def coefficient(self, exponent):
        exponent = Fraction(exponent)
        if self.exact_below is not None and exponent >= self.exact_below:
            raise TruncationCapExceeded(
                f"coefficient of x^{exponent} requested but series exact only below x^{self.exact_below}"
            )
        return self.terms().get(exponent, ParamCoeff())

    def residue(self):
        """Coefficient of x^-1."""
        return self.coefficient(-1)

    def is_zero(self):
        return not self.strands

    def _binary(self, other, sign):
        if not isinstance(other, StrandSeries):
            return NotImplemented
        merged = self.terms()
        for e, c in other.terms().items():
            _accumulate(merged, e, c if sign > 0 else -c)
        return StrandSeries.from_terms(merged, _min_trunc(self.exact_below, other.exact_below))

    def __add__(self, other):
        return self._binary(other, 1)

    def __sub__(self, other):
        return self._binary(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = ParamCoeff.coerce(c)
        return StrandSeries.from_terms({e: v * c for e, v in self.terms().items()}, self.exact_below)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ParamCoeff)):
            return self.scale(other)
        if not isinstance(other, StrandSeries):
            return NotImplemented
        ta, tb = self.terms(), other.terms()
        if not ta or not tb:
            low_a = min(ta) if ta else None
            low_b = min(tb) if tb else None
            trunc = _product_trunc(self.exact_below, other.exact_below, low_a, low_b)
            return StrandSeries({}, trunc)
        trunc = _product_trunc(self.exact_below, other.exact_below, min(ta), min(tb))
        out = {}
        for ea, ca in ta.items():
            for eb, cb in tb.items():
                e = ea + eb
                if trunc is not None and e >= trunc:
                    continue
                _accumulate(out, e, ca * cb)
        return StrandSeries.from_terms(out, trunc)

    __rmul__ = __mul__

    def shift(self, exponent):
        """Multiply by x^exponent."""
        exponent = Fraction(exponent)
        trunc = None if self.exact_below is None else self.exact_below + exponent
        return StrandSeries.from_terms({e + exponent: c for e, c in self.terms().items()}, trunc)

    def derivative(self):
        trunc = None if self.exact_below is None else self.exact_below - 1
        return StrandSeries.from_terms({e - 1: c * e for e, c in self.terms().items() if e != 0}, trunc)

    def truncate(self, exact_below):
        exact_below = Fraction(exact_below)
        if self.exact_below is not None:
            exact_below = min(exact_below, self.exact_below)
        return StrandSeries.from_terms(
            {e: c for e, c in self.terms().items() if e < exact_below}, exact_below
        )

    def evaluate(self, xv, Hv, dv=0):
        """Numerical value at x = xv > 0 (mpmath or float arithmetic)."""
        kind = type(xv)
        Hn, dn = to_numeric(Hv, kind), to_numeric(dv, kind)
        total = kind(0)
        for e, c in self.terms().items():
            total += c.evaluate(Hn, dn) * xv ** to_numeric(e, kind)
        return total

    def __eq__(self, other):
        if not isinstance(other, StrandSeries):
            return NotImplemented
        return self.terms() == other.terms() and self.exact_below == other.exact_below

    def __repr__(self):
        return f"StrandSeries({format_series(self)})"


def _accumulate(table, e, c):
    e = Fraction(e)
    new = table.get(e, ParamCoeff()) + c
    if new.is_zero():
        table.pop(e, None)
    else:
        table[e] = new


def _regroup(terms, exact_below):
    by_class = {}
    for e, c in terms.items():
        if c.is_zero() or (exact_below is not None and e >= exact_below):
            continue
        by_class.setdefault(_class_key(e), {})[e] = c
    strands = {}
    for group in by_class.values():
        base = min(group)
        strands[base] = {int((e - base) / STEP): c for e, c in sorted(group.items())}
    return strands


def _min_trunc(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _product_trunc(ta, tb, low_a, low_b):
    cands = []
    if ta is not None and low_b is not None:
        cands.append(ta + low_b)
    if tb is not None and low_a is not None:
        cands.append(tb + low_a)
    if ta is not None and tb is not None and not cands:
        cands.append(ta + tb)
    return min(cands) if cands else None


def format_series(s, var="x"):
    """Human-readable exact rendering, e.g. ``x^(5/2) * (1 - 3/28*H x^3 + ...)``."""
    terms = s.terms()
    if not terms:
        body = "0"
    else:
        parts = []
        for e, c in terms.items():
            coef = str(c)
            if len(c.a) + len(c.b) > 1 or c.has_d:
                coef = f"({coef})"
            ex = f"{e}" if e.denominator == 1 else f"({e})"
            parts.append(f"{coef}*{var}^{ex}")
        body = " + ".join(parts)
    if s.exact_below is not None:
        body += f" + O({var}^{s.exact_below})"
    return body


def binomial_series(power, steps, step_coeff=None):
    """(1 + H x^3)^power as a strand series exact below x^(3*steps)."""
    power = Fraction(power)
    coeffs = {}
    c = Fraction(1)
    for n in range(steps):
        if n:
            c = c * (power - (n - 1)) / n
        if c:
            coeffs[n] = ParamCoeff.monomial(c, n)
    return StrandSeries({Fraction(0): coeffs}, Fraction(STEP * steps))


# --- expansion of r ---------------------------------------------------------


def _poly_in_H(expr, Hsym):
    """sympy polynomial in H with rational coefficients -> dense Fraction tuple."""
    poly = sympy.Poly(sympy.expand(expr), Hsym)
    out = [Fraction(0)] * (poly.degree() + 1 if not poly.is_zero else 0)
    for (k,), c in zip(poly.monoms(), poly.coeffs()):
        c = sympy.Rational(c)
        out[k] = Fraction(int(c.p), int(c.q))
    return ParamCoeff(tuple(out))


def laurent_coefficients(nf, count):
    """c_0..c_{count-1} with r = x^-2 * sum c_n x^(3n), exact in Q[H].

    ``nf.r`` must be free of symbols other than x and H (substitute tau first).
    """
    from .variational import H as Hsym

    xs = nf.var
    num, den = sympy.fraction(sympy.cancel(nf.r))
    if num == 0:
        return [ParamCoeff()] * count
    free = (num.free_symbols | den.free_symbols) - {xs, Hsym}
    if free:
        raise ValueError(f"r depends on unspecialized symbols {sorted(map(str, free))}")
    num_p, den_p = sympy.Poly(num, xs), sympy.Poly(den, xs)
    # r = x^-2 R(x^3): the pole order at 0 is 2, or 2 - 3m when R vanishes to order m
    low_den = min(m[0] for m in den_p.monoms())
    low_num = min(m[0] for m in num_p.monoms())
    lift = low_num - low_den + 2
    if lift < 0 or lift % STEP:
        raise ValueError(f"r has a pole of order {low_den - low_num} at x = 0; not of the form x^-2 R(x^3)")
    num_c = [ParamCoeff()] * (lift // STEP) + _lattice_coeffs(num_p, low_num, Hsym)
    den_c = _lattice_coeffs(den_p, low_den, Hsym)
    lead = den_c[0]
    if lead.has_d or len(lead.a) != 1:
        raise ValueError("denominator of r must have a rational constant term")
    inv_lead = 1 / lead.scalar()
    out = []
    for n in range(count):
        acc = num_c[n] if n < len(num_c) else ParamCoeff()
        for j in range(1, min(n, len(den_c) - 1) + 1):
            acc = acc - den_c[j] * out[n - j]
        out.append(acc * inv_lead)
    return out


def _lattice_coeffs(poly, low, Hsym):
    out = {}
    for (k,), c in zip(poly.monoms(), poly.coeffs()):
        k -= low
        if k % STEP:
            raise ValueError("r is not of the form x^-2 R(x^3)")
        out[k // STEP] = _poly_in_H(c, Hsym)
    top = max(out)
    return [out.get(i, ParamCoeff()) for i in range(top + 1)]


def laurent_coefficients_symbolic(nf, count):
    """Same as :func:`laurent_coefficients` but as sympy expressions (tau may be free)."""
    u = sympy.Symbol("u")
    xs = nf.var
    R = sympy.cancel(nf.r * xs**2)
    ser = sympy.series(R.subs(xs, u ** sympy.Rational(1, 3)), u, 0, count).removeO()
    return [sympy.factor(ser.coeff(u, n)) for n in range(count)]


# --- recurrence ---------------------------------------------------------------


def indicial_roots(nf):
    """Roots of rho(rho - 1) = c_0, larger first for rational data."""
    from .variational import tau as tau_sym

    if nf.r == 0:
        return (Fraction(1), Fraction(0))
    if tau_sym in nf.r.free_symbols:
        c0 = laurent_coefficients_symbolic(nf, 1)[0]
        rho = sympy.Symbol("rho")
        roots = sympy.solve(rho**2 - rho - c0, rho)
        return tuple(sorted(roots, key=lambda r: -sympy.sympify(r).coeff(tau_sym)))
    c0 = laurent_coefficients(nf, 1)[0]
    if c0.has_d or len(c0.a) > 1:
        raise ValueError("leading Laurent coefficient of r must be a rational constant")
    c0 = c0.scalar()
    disc = Fraction(1, 4) + c0
    from .exactnum import rational_sqrt

    s = rational_sqrt(disc)
    if s is None:
        raise ValueError(f"indicial roots irrational: rho(rho-1) = {c0}")
    return (Fraction(1, 2) + s, Fraction(1, 2) - s)


def recurrence(c, rho, steps):
    """Frobenius coefficients a_0..a_steps for zeta'' = x^-2 sum c_j x^(3j) zeta.

    a_n * 3n(2 rho + 3n - 1) = sum_{j>=1} c_j a_{n-j}.  Generic over the
    coefficient type (ParamCoeff or sympy).  Raises :class:`LogRequired` when
    the left factor vanishes while the right side does not.
    """
    one = c[0] * 0 + 1 if not isinstance(c[0], ParamCoeff) else ParamCoeff.const(1)
    a = [one]
    for n in range(1, steps + 1):
        rhs = sum((c[j] * a[n - j] for j in range(1, n + 1) if j < len(c)), one * 0)
        denom = STEP * n * (2 * rho + STEP * n - 1)
        if isinstance(rhs, sympy.Basic):
            rhs = sympy.factor(rhs)
        if denom == 0:
            if _is_zero(rhs):
                a.append(one * 0)
                continue
            raise LogRequired(n, rhs)
        if isinstance(rhs, ParamCoeff):
            a.append(rhs / denom)
        else:
            a.append(sympy.factor(rhs / denom))
    return a


def _is_zero(v):
    if isinstance(v, ParamCoeff):
        return v.is_zero()
    return sympy.simplify(v) == 0


def frobenius_series(nf, rho, order, cap=DEFAULT_CAP):
    """x^rho (1 + a_1 x^3 + ... + a_order x^(3 order)), exact below x^(rho + 3(order+1))."""
    if order > cap:
        raise TruncationCapExceeded(f"order {order} exceeds cap {cap}")
    rho = Fraction(rho)
    c = laurent_coefficients(nf, order + 1)
    a = recurrence(c, rho, order)
    coeffs = {n: v for n, v in enumerate(a) if not v.is_zero()}
    return StrandSeries({rho: coeffs}, rho + STEP * (order + 1))


def r_series(nf, count):
    """r itself as a strand series exact below x^(-2 + 3 count)."""
    c = laurent_coefficients(nf, count)
    return StrandSeries({Fraction(-2): dict(enumerate(c))}, Fraction(-2 + STEP * count))


def plug_back_residual(nf, series, extra=4):
    """zeta'' - r zeta for a truncated series treated as an exact finite sum."""
    exact = StrandSeries.from_terms(series.terms())
    low = exact.lowest_exponent()
    top = max(exact.terms())
    count = int((top - low) / STEP) + 1 + extra
    r = r_series(nf, count)
    return exact.derivative().derivative() - r * exact


@dataclass(frozen=True)
class FrobeniusPair:
    """Two local solutions; ``first`` carries exponents[0].

    ``wronskian`` is the constant first*second' - second*first' (a ParamCoeff),
    or None when ``log_flag`` is set and no second power series exists.
    """

    first: StrandSeries
    second: StrandSeries
    exponents: tuple
    wronskian: object
    log_flag: bool = False


def wronskian_series(f, g):
    return f * g.derivative() - g * f.derivative()


def constant_wronskian(f, g):
    """The constant value of W(f, g); raises if W is not constant to truncation."""
    W = wronskian_series(f, g)
    value = ParamCoeff()
    for e, c in W.terms().items():
        if e == 0:
            value = c
        elif not c.is_zero():
            raise ValueError(f"Wronskian not constant: term {c} x^{e}")
    return value


def frobenius_pair(nf, order, first_root=None, cap=DEFAULT_CAP):
    """Both local solutions at x = 0.

    By default the larger exponent comes first; ``first_root`` selects the
    labelling explicitly.
    """
    r1, r2 = indicial_roots(nf)
    if first_root is not None:
        first_root = Fraction(first_root)
        if first_root == r2:
            r1, r2 = r2, r1
        elif first_root != r1:
            raise ValueError(f"{first_root} is not an indicial root")
    f = frobenius_series(nf, r1, order, cap)
    try:
        g = frobenius_series(nf, r2, order, cap)
    except LogRequired:
        return FrobeniusPair(f, None, (r1, r2), None, True)
    if r1 == r2:
        return FrobeniusPair(f, None, (r1, r2), None, True)
    return FrobeniusPair(f, g, (r1, r2), constant_wronskian(f, g))


def normalize_wronskian(pair):
    """Rescale ``second`` so that first*second' - second*first' == 1 exactly."""
    if pair.log_flag:
        raise ValueError("pair needs a logarithmic solution; cannot normalize")
    r1, r2 = pair.exponents
    if (r1 - r2) % STEP == 0:
        raise ValueError("exponents differ by a multiple of 3: strands collide")
    W = pair.wronskian
    if W == ParamCoeff.const(1):
        return pair
    scale = 1 / W.scalar()
    return FrobeniusPair(pair.first, pair.second.scale(scale), pair.exponents, ParamCoeff.const(1))


def steps_for_exponent(lowest, target=Fraction(-1)):
    """Smallest n with lowest + 3n > target."""
    lowest = Fraction(lowest)
    if lowest > target:
        return 0
    return int(math.floor((target - lowest) / STEP)) + 1
