"""Brute-force residue oracle on a flat exponent grid.

Shares no series code with the package.  The VE1 normal forms are rebuilt with
sympy from the coefficients in the x = 1/w chart; solutions come from
coefficient matching on 16 x^2 (Hx^3+1)^2 zeta'' = N(x) zeta at every integer
offset (no lattice bookkeeping); products are naive double loops over
{exponent: coeff} dicts.  Coefficients are dicts {(deg_H, deg_d): Fraction}.
"""

from fractions import Fraction

import sympy

X, HS = sympy.symbols("x H")


# --- tiny polynomial ring Q[H, d] -----------------------------------------


def padd(p, q, sign=1):
    out = dict(p)
    for m, c in q.items():
        v = out.get(m, 0) + sign * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def pmul(p, q):
    out = {}
    for (a1, b1), c1 in p.items():
        for (a2, b2), c2 in q.items():
            m = (a1 + a2, b1 + b2)
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def pscale(p, c):
    c = Fraction(c)
    return {m: v * c for m, v in p.items()} if c else {}


def const(c):
    c = Fraction(c)
    return {(0, 0): c} if c else {}


# --- flat Laurent series {exponent: poly} -----------------------------------


def sadd(a, b, sign=1):
    out = dict(a)
    for e, c in b.items():
        v = padd(out.get(e, {}), c, sign)
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def smul(a, b, top):
    """Product keeping exponents <= top."""
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            if e > top:
                continue
            v = padd(out.get(e, {}), pmul(ca, cb))
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def sscale(a, c):
    return {e: pmul(v, c) for e, v in a.items() if pmul(v, c)}


def sderiv(a):
    return {e - 1: pscale(c, e) for e, c in a.items() if e != 0}


# --- equations ----------------------------------------------------------------


def normal_form_numerator(b_const):
    """N with r = N / (16 x^2 (Hx^3+1)^2), for b = -b_const/(x^2 (Hx^3+1))."""
    a = 3 * HS * X**2 / (2 * (HS * X**3 + 1))
    b = -b_const / (X**2 * (HS * X**3 + 1))
    r = sympy.diff(a, X) / 2 + a**2 / 4 - b
    N = sympy.expand(sympy.cancel(r * 16 * X**2 * (HS * X**3 + 1) ** 2))
    poly = sympy.Poly(N, X, HS)
    out = {}
    for (i, j), c in zip(poly.monoms(), poly.coeffs()):
        c = sympy.Rational(c)
        out.setdefault(i, {})[(j, 0)] = Fraction(int(c.p), int(c.q))
    return out


def solve_series(N, rho, span):
    """x^rho (1 + ...) through exponent rho + span, by matching on the unit grid."""
    rho = Fraction(rho)
    n0 = N.get(0, {}).get((0, 0), Fraction(0))
    a = [const(1)]
    for n in range(1, span + 1):
        e = rho + n
        rhs = {}
        for j, nj in N.items():
            if j and n - j >= 0:
                rhs = padd(rhs, pmul(nj, a[n - j]))
        if n >= 3:
            rhs = padd(rhs, pmul({(1, 0): Fraction(-32 * (e - 3) * (e - 4))}, a[n - 3]))
        if n >= 6:
            rhs = padd(rhs, pmul({(2, 0): Fraction(-16 * (e - 6) * (e - 7))}, a[n - 6]))
        denom = 16 * e * (e - 1) - n0
        if denom == 0:
            if rhs:
                raise ArithmeticError(f"logarithm needed at exponent {e}")
            a.append({})
        else:
            a.append(pscale(rhs, 1 / denom))
    return {rho + n: c for n, c in enumerate(a) if c}


def binomial(power, span):
    power = Fraction(power)
    out = {}
    c = Fraction(1)
    for n in range(0, span // 3 + 1):
        if n:
            c = c * (power - n + 1) / n
        if c:
            out[Fraction(3 * n)] = {(n, 0): c}
    return out


# --- residues -----------------------------------------------------------------


def residues(tau, scale12_second=None, binomial_power=Fraction(-3, 4)):
    """{(row, (i, j)): {(deg_H, deg_d): coeff}} for all sixteen components."""
    tau = Fraction(tau)
    g = -(9 * tau * tau - 4) / 2
    b11 = sympy.Rational((9 * tau * tau - 4).numerator, (9 * tau * tau - 4).denominator) / 16
    N11 = normal_form_numerator(b11)
    N12 = normal_form_numerator(sympy.Rational(15, 4))
    e11 = (Fraction(1, 2) + 3 * tau / 4, Fraction(1, 2) - 3 * tau / 4)
    e12 = (Fraction(5, 2), Fraction(-3, 2))
    lo11, lo12 = min(e11), min(e12)
    lowest = min(lo11, lo12) + min(2 * lo11, lo11 + lo12, 2 * lo12) - Fraction(3, 2)
    span = int(-1 - lowest) + 2
    top = Fraction(-1)

    sol = {}
    for name, N, exps, extra in (("z11", N11, e11, None), ("z12", N12, e12, scale12_second)):
        f = solve_series(N, exps[0], span)
        s = solve_series(N, exps[1], span)
        # f s' - s f' has constant term exps[1] - exps[0]
        factor = Fraction(1) / (exps[1] - exps[0]) * Fraction(extra if extra is not None else 1)
        sol[(name, 1)] = f
        sol[(name, 2)] = {e: pscale(c, factor) for e, c in s.items()}
        sol[(name, "W")] = Fraction(extra if extra is not None else 1)

    pre = {e - Fraction(3, 2): c for e, c in binomial(binomial_power, span).items()}
    far = top + 2 * span + 10
    out = {}
    for i in (1, 2):
        for j in (1, 2):
            z11, z12 = sol[("z11", i)], sol[("z12", j)]
            p1112 = smul(z11, z12, far)
            p1111 = smul(z11, z11, far)
            p1212 = smul(z12, z12, far)
            K1 = sadd(sscale(p1112, const(g)), sscale(p1111, {(0, 1): Fraction(-3, 8)}))
            K2 = sadd(sscale(p1111, const(g)), sscale(p1212, const(Fraction(-15, 2))))
            K1 = smul(K1, pre, far)
            K2 = smul(K2, pre, far)
            for row, sign, block, idx, src in (
                (1, -1, "z11", 2, K1),
                (2, 1, "z11", 1, K1),
                (3, -1, "z12", 2, K2),
                (4, 1, "z12", 1, K2),
            ):
                W = sol[(block, "W")]
                mult = {e: pscale(c, Fraction(sign) / W) for e, c in sol[(block, idx)].items()}
                out[(row, (i, j))] = smul(mult, src, top).get(top, {})
    return out
