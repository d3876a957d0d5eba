"""Exact scalars: rationals, quadratic surds, root-of-unity exponents and the
coefficient ring Q[H] + Q[H]*d used by every series computation.

``H`` stands for h**3 and ``d`` for D/C.  Everything here is immutable.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
import re

from .errors import OutOfScope, RingWideningError

__all__ = [
    "as_rational",
    "parse_rational",
    "parse_scalar",
    "format_rational",
    "to_numeric",
    "rational_sqrt",
    "QuadraticSurd",
    "UnitRootExp",
    "ParamCoeff",
    "ResonanceClass",
    "classify_tau",
    "TriangularMonodromy",
    "CommutativityReport",
    "unit_root_commutator",
]


def as_rational(x):
    """Coerce ints, Fractions and rational strings to ``Fraction``.

    Floats are rejected on purpose: the exact pipeline never guesses.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(token):
    """Parse ``"16"``, ``"2/3"`` or ``"-8/3"`` into a Fraction."""
    m = _RATIONAL_RE.match(token)
    if not m or (m.group(2) is not None and int(m.group(2)) == 0):
        raise ValueError(f"not an exact rational: {token!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    return Fraction(num, den)


_SURD_RE = re.compile(r"^\s*([+-])?\s*sqrt\(\s*([^)]+?)\s*\)\s*$")


def parse_scalar(token):
    """Parse a rational or a signed surd ``"sqrt(m/n)"`` / ``"-sqrt(2)"``.

    Returns a Fraction when the value is rational (including perfect-square
    surds), otherwise a :class:`QuadraticSurd`.
    """
    m = _SURD_RE.match(token)
    if m:
        try:
            radicand = parse_rational(m.group(2))
        except ValueError:
            raise ValueError(f"not a valid surd: {token!r}") from None
        if radicand < 0:
            raise ValueError(f"negative radicand in {token!r}")
        sign = -1 if m.group(1) == "-" else 1
        return QuadraticSurd.make(0, sign, radicand)
    return parse_rational(token)


def to_numeric(x, kind):
    """Convert an exact rational to the numeric type ``kind`` (float, mpf, ...)."""
    if isinstance(x, Fraction):
        return kind(x.numerator) / kind(x.denominator)
    return kind(x)


def format_rational(x):
    """Serialize a rational as ``"num/den"`` (denominator always present)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def rational_sqrt(x):
    """Exact nonnegative square root of a rational, or None if irrational.

    >>> rational_sqrt(Fraction(4, 9))
    Fraction(2, 3)
    >>> rational_sqrt(Fraction(2)) is None
    True
    """
    x = Fraction(x)
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn != n or rd * rd != d:
        return None
    return Fraction(rn, rd)


@dataclass(frozen=True)
class QuadraticSurd:
    """The real number ``offset + coeff * sqrt(radicand)``.

    Built through :meth:`make`, which collapses perfect-square radicands to a
    plain Fraction, so a live instance is always irrational.
    """

    radicand: Fraction
    coeff: Fraction = Fraction(1)
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        if self.radicand < 0:
            raise ValueError("radicand must be nonnegative")

    @staticmethod
    def make(offset, coeff, radicand):
        offset, coeff, radicand = Fraction(offset), Fraction(coeff), Fraction(radicand)
        root = rational_sqrt(radicand)
        if root is not None or coeff == 0:
            return offset + coeff * (root or 0)
        return QuadraticSurd(radicand, coeff, offset)

    @property
    def sign(self):
        return 1 if self.coeff > 0 else -1

    @property
    def rational_part(self):
        # Always None for a constructed instance; kept for the documented shape.
        return rational_sqrt(self.radicand)

    def __float__(self):
        return float(self.offset) + float(self.coeff) * float(self.radicand) ** 0.5

    def __neg__(self):
        return QuadraticSurd(self.radicand, -self.coeff, -self.offset)

    def __add__(self, other):
        if isinstance(other, QuadraticSurd):
            if other.radicand != self.radicand:
                return NotImplemented
            return QuadraticSurd.make(self.offset + other.offset, self.coeff + other.coeff, self.radicand)
        if isinstance(other, (int, Fraction)):
            return QuadraticSurd(self.radicand, self.coeff, self.offset + other)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuadraticSurd.make(self.offset * other, self.coeff * other, self.radicand)
        if isinstance(other, QuadraticSurd) and other.radicand == self.radicand:
            return QuadraticSurd.make(
                self.offset * other.offset + self.coeff * other.coeff * self.radicand,
                self.offset * other.coeff + other.offset * self.coeff,
                self.radicand,
            )
        return NotImplemented

    __rmul__ = __mul__

    def __str__(self):
        root = f"sqrt({format_rational(self.radicand).removesuffix('/1')})"
        if self.coeff == 1:
            body = root
        elif self.coeff == -1:
            body = "-" + root
        else:
            body = f"{self.coeff}*{root}"
        if self.offset == 0:
            return body
        if body.startswith("-"):
            return f"{self.offset} - {body[1:]}"
        return f"{self.offset} + {body}"


def is_rational(x):
    return isinstance(x, (int, Fraction))


@dataclass(frozen=True)
class UnitRootExp:
    """The unit complex number ``exp(exponent * pi * i)``.

    Rational exponents are reduced into [0, 2); surd exponents stay symbolic.
    """

    exponent: object

    def __post_init__(self):
        e = self.exponent
        if isinstance(e, int):
            e = Fraction(e)
        if isinstance(e, Fraction):
            e = e - 2 * (e // 2)
        object.__setattr__(self, "exponent", e)

    @property
    def is_rational(self):
        return isinstance(self.exponent, Fraction)

    def __mul__(self, other):
        return UnitRootExp(self.exponent + other.exponent)

    def inverse(self):
        return UnitRootExp(-self.exponent)

    def is_one(self):
        return self.exponent == 0

    def squares_to_one(self):
        """True iff u**2 == 1, i.e. the exponent is an integer."""
        return self.is_rational and self.exponent.denominator == 1

    def __complex__(self):
        import cmath

        return cmath.exp(1j * cmath.pi * float(self.exponent))

    def __str__(self):
        e = self.exponent
        if e == 0:
            return "1"
        text = format_rational(e).removesuffix("/1") if isinstance(e, Fraction) else f"({e})"
        return f"exp({text}*pi*i)"


def _trim(poly):
    poly = list(poly)
    while poly and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def _poly_add(p, q):
    n = max(len(p), len(q))
    return _trim((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def _poly_mul(p, q):
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def _poly_scale(p, c):
    return _trim(a * c for a in p)


def _poly_str(p, var="H"):
    terms = []
    for i, c in enumerate(p):
        if c == 0:
            continue
        coef = format_rational(c).removesuffix("/1")
        if i == 0:
            terms.append(coef)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            if c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{coef}*{mono}")
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


@dataclass(frozen=True)
class ParamCoeff:
    """Element ``a(H) + b(H)*d`` of Q[H] + Q[H]*d.

    ``a`` and ``b`` are dense coefficient tuples from degree 0 with no trailing
    zeros.  Multiplying two elements that both carry a ``d`` part raises
    :class:`RingWideningError` instead of silently leaving the ring.
    """

    a: tuple = ()
    b: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "a", _trim(Fraction(c) for c in self.a))
        object.__setattr__(self, "b", _trim(Fraction(c) for c in self.b))

    @classmethod
    def const(cls, c):
        return cls((Fraction(c),))

    @classmethod
    def monomial(cls, c, degree, with_d=False):
        poly = (0,) * degree + (Fraction(c),)
        return cls((), poly) if with_d else cls(poly)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, ParamCoeff):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        return NotImplemented

    def is_zero(self):
        return not self.a and not self.b

    def __bool__(self):
        return not self.is_zero()

    @property
    def has_d(self):
        return bool(self.b)

    @property
    def d_free_part(self):
        return ParamCoeff(self.a)

    @property
    def d_part(self):
        return ParamCoeff(self.b)

    def __add__(self, other):
        other = ParamCoeff.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return ParamCoeff(_poly_add(self.a, other.a), _poly_add(self.b, other.b))

    __radd__ = __add__

    def __neg__(self):
        return ParamCoeff(_poly_scale(self.a, -1), _poly_scale(self.b, -1))

    def __sub__(self, other):
        other = ParamCoeff.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ParamCoeff(_poly_scale(self.a, other), _poly_scale(self.b, other))
        if not isinstance(other, ParamCoeff):
            return NotImplemented
        if self.b and other.b:
            raise RingWideningError("product of two d-carrying coefficients")
        return ParamCoeff(
            _poly_mul(self.a, other.a),
            _poly_add(_poly_mul(self.a, other.b), _poly_mul(self.b, other.a)),
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("ParamCoeff division by zero")
            return self * (1 / Fraction(other))
        return NotImplemented

    def __eq__(self, other):
        other = ParamCoeff.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def evaluate(self, H, d=0):
        """Numerical value at given H and d (any numeric type, e.g. mpmath)."""
        total = 0
        for i, c in enumerate(self.a):
            total += c * H**i if i else c
        for i, c in enumerate(self.b):
            total += (c * H**i if i else c) * d
        return total

    def scalar(self):
        """The value as a Fraction when it is a plain rational constant."""
        if self.b or len(self.a) > 1:
            raise ValueError(f"{self} is not a rational constant")
        return self.a[0] if self.a else Fraction(0)

    def to_sympy(self, H=None, d=None):
        import sympy

        H = H if H is not None else sympy.Symbol("H")
        d = d if d is not None else sympy.Symbol("d")
        expr = sum((sympy.Rational(c.numerator, c.denominator) * H**i for i, c in enumerate(self.a)), sympy.Integer(0))
        expr += d * sum((sympy.Rational(c.numerator, c.denominator) * H**i for i, c in enumerate(self.b)), sympy.Integer(0))
        return sympy.expand(expr)

    def __str__(self):
        if not self.b:
            return _poly_str(self.a)
        dpart = f"({_poly_str(self.b)})*d"
        if not self.a:
            return dpart
        return f"{_poly_str(self.a)} + {dpart}"

    def __repr__(self):
        return f"ParamCoeff({self})"


PLUS_FAMILY = "2k+2/3"
MINUS_FAMILY = "-2k+4/3"


def resonance_ks(tau):
    """All (family, k) with tau = 2k+2/3 or tau = -2k+4/3, k an integer."""
    out = []
    k = (tau - Fraction(2, 3)) / 2
    if k.denominator == 1:
        out.append((PLUS_FAMILY, int(k)))
    k = (Fraction(4, 3) - tau) / 2
    if k.denominator == 1:
        out.append((MINUS_FAMILY, int(k)))
    return out


def tau_of(k, family):
    if family == PLUS_FAMILY:
        return 2 * Fraction(k) + Fraction(2, 3)
    if family == MINUS_FAMILY:
        return -2 * Fraction(k) + Fraction(4, 3)
    raise ValueError(f"unknown family {family!r}")


@dataclass(frozen=True)
class ResonanceClass:
    """Classification of tau = +-sqrt((2A+4C)/(9C)).

    ``status`` is ``"rational"``, ``"irrational"`` or ``"negative"`` (tau**2 < 0,
    which counts as irrational for decisions).  ``realizations`` lists
    ``(sign, family, k)`` for every sign branch that hits a resonant family.
    """

    tau_squared: Fraction
    tau: object  # nonnegative root: Fraction, QuadraticSurd, or None when negative
    status: str
    realizations: tuple = ()

    @property
    def rational(self):
        return self.status == "rational"

    @property
    def resonant(self):
        return bool(self.realizations)

    @property
    def ks(self):
        return sorted({k for _, _, k in self.realizations})

    def branches(self):
        """The distinct signed values of tau (rational case only)."""
        if not self.rational:
            return ()
        return (self.tau,) if self.tau == 0 else (self.tau, -self.tau)


def classify_tau(A, C):
    A, C = as_rational(A), as_rational(C)
    if C == 0:
        raise OutOfScope("C = 0: the invariant manifold needs C != 0")
    t2 = (2 * A + 4 * C) / (9 * C)
    if t2 < 0:
        return ResonanceClass(t2, None, "negative")
    root = rational_sqrt(t2)
    if root is None:
        return ResonanceClass(t2, QuadraticSurd(t2), "irrational")
    realizations = []
    for sign in (1, -1):
        if sign == -1 and root == 0:
            break
        for family, k in resonance_ks(sign * root):
            realizations.append((sign, family, k))
    return ResonanceClass(t2, root, "rational", tuple(realizations))


@dataclass(frozen=True)
class TriangularMonodromy:
    """Upper triangular 2x2 matrix [[u, alpha], [0, 1/u]], alpha symbolic.

    ``off_diagonal`` is an indeterminate name, or ``"0"`` for the diagonal case.
    """

    diagonal: tuple
    off_diagonal: str = "alpha"

    def __post_init__(self):
        u, v = self.diagonal
        if u.is_rational and v.is_rational and (u * v).exponent != 0:
            raise ValueError("determinant must be 1")

    @property
    def u(self):
        return self.diagonal[0]

    def __str__(self):
        u, v = self.diagonal
        return f"[[{u}, {self.off_diagonal}], [0, {v}]]"


@dataclass(frozen=True)
class CommutativityReport:
    """Outcome of comparing M1*M2 with M2*M1.

    The only entry that can differ is the upper-right one; the identity is
    ``alpha2*(u1 - 1/u1) == alpha1*(u2 - 1/u2)``.  ``coefficients`` holds
    ``(c1, c2)`` as the strings ``"0"`` or ``"2i*sin(theta*pi)"``.
    """

    status: str
    condition: str
    coefficients: tuple = field(default=("0", "0"))


def _sin_factor(u):
    if u.squares_to_one():
        return "0"
    return f"2i*sin(({u.exponent})*pi)"


def _sin_relation(e1, e2):
    """+1 if sin(e1*pi) == sin(e2*pi) provably, -1 if opposite, 0 if undecided."""
    checks = (
        (lambda: e1 - e2, 1),
        (lambda: e1 + e2 - 1, 1),
        (lambda: e1 + e2, -1),
        (lambda: e1 - e2 - 1, -1),
    )
    for combo, rel in checks:
        try:
            u = UnitRootExp(combo())
        except TypeError:
            continue
        if u.is_rational and u.is_one():
            return rel
    return 0


def unit_root_commutator(M1, M2, nonzero=()):
    """Exact commutation condition for two triangular monodromy generators.

    ``nonzero`` names indeterminates constrained to be nonzero; a condition
    that then forces one of them to vanish is reported as ``NeverCommute``.
    """
    a1, a2 = M1.off_diagonal, M2.off_diagonal
    c1, c2 = _sin_factor(M1.u), _sin_factor(M2.u)
    zero1 = a1 == "0" or c2 == "0"  # term alpha1*(u2 - 1/u2) vanishes
    zero2 = a2 == "0" or c1 == "0"
    if zero1 and zero2:
        return CommutativityReport("AlwaysCommute", "0 = 0", (c1, c2))
    if zero1 or zero2:
        survivor = a2 if zero1 else a1
        status = "NeverCommute" if survivor in nonzero else "Conditional"
        return CommutativityReport(status, f"{survivor} = 0", (c1, c2))
    e1, e2 = M1.u.exponent, M2.u.exponent
    rel = _sin_relation(e1, e2)
    if a1 == a2:
        # one shared indeterminate: alpha*(c1 - c2) = 0
        if rel == 1:
            return CommutativityReport("AlwaysCommute", "0 = 0", (c1, c2))
        status = "NeverCommute" if a1 in nonzero else "Conditional"
        return CommutativityReport(status, f"{a1} = 0", (c1, c2))
    if rel == 1:
        cond = f"{a1} = {a2}"
    elif rel == -1:
        cond = f"{a2} = -{a1}"
    else:
        cond = f"{a2}*{c1} = {a1}*{c2}"
    return CommutativityReport("Conditional", cond, (c1, c2))
