"""High-precision numerical checks of the exact pipeline.

An adaptive Verner 6(5) Runge-Kutta integrator in mpmath arithmetic drives
three oracles: series-vs-ODE agreement for the Frobenius solutions, Wronskian
constancy, and energy conservation of the Hamiltonian flow.
"""

from dataclasses import dataclass
from fractions import Fraction as F

import mpmath
import sympy

from .errors import IntegrationError
from .exactnum import to_numeric
from .frobenius import StrandSeries, normalize_wronskian
from .model import PhaseState, hamiltonian, vector_field

# Verner's "most robust" 6(5) pair; stage 9 is evaluated at the new point.
_C = (F(0), F(9, 50), F(1, 6), F(1, 4), F(53, 100), F(3, 5), F(4, 5), F(1), F(1))
_A = (
    (),
    (F(9, 50),),
    (F(29, 324), F(25, 324)),
    (F(1, 16), F(0), F(3, 16)),
    (F(79129, 250000), F(0), F(-261237, 250000), F(19663, 15625)),
    (F(1336883, 4909125), F(0), F(-25476, 30875), F(194159, 185250), F(8225, 78546)),
    (F(-2459386, 14727375), F(0), F(19504, 30875), F(2377474, 13615875), F(-6157250, 5773131),
     F(902, 735)),
    (F(2699, 7410), F(0), F(-252, 1235), F(-1393253, 3993990), F(236875, 72618), F(-135, 49),
     F(15, 22)),
    (F(11, 144), F(0), F(0), F(256, 693), F(0), F(125, 504), F(125, 528), F(5, 72)),
)
_B6 = (F(11, 144), F(0), F(0), F(256, 693), F(0), F(125, 504), F(125, 528), F(5, 72), F(0))
_B5 = (F(28, 477), F(0), F(0), F(212, 441), F(-312500, 366177), F(2125, 1764), F(0),
       F(-2105, 35532), F(2995, 17766))
ORDER = 6


@dataclass(frozen=True)
class IntegrationConfig:
    rtol: float = 1e-12
    atol: float = 1e-12
    max_steps: int = 200_000
    prec: int = 96

    def __post_init__(self):
        for name in ("rtol", "atol"):
            v = getattr(self, name)
            if not 0 < v <= 1e-6:
                raise ValueError(f"{name} must lie in (0, 1e-6], got {v}")
        if self.prec < 80:
            raise ValueError("precision must be at least 80 bits")
        if self.max_steps < 1:
            raise ValueError("max_steps must be positive")


@dataclass(frozen=True)
class Trajectory:
    """Accepted steps (t_i, y_i) plus derivatives for Hermite dense output."""

    t: tuple
    y: tuple
    dy: tuple
    steps: int
    rejected: int

    def at(self, tq):
        """Cubic Hermite interpolation between the bracketing steps."""
        tq = mpmath.mpf(tq)
        ts = self.t
        forward = ts[-1] >= ts[0]
        lo, hi = (ts[0], ts[-1]) if forward else (ts[-1], ts[0])
        if not lo <= tq <= hi:
            raise ValueError(f"t = {tq} outside the integrated span")
        for i in range(len(ts) - 1):
            a, b = ts[i], ts[i + 1]
            if min(a, b) <= tq <= max(a, b):
                break
        h = b - a
        if h == 0:
            return self.y[i]
        s = (tq - a) / h
        h00 = 2 * s**3 - 3 * s**2 + 1
        h10 = s**3 - 2 * s**2 + s
        h01 = -2 * s**3 + 3 * s**2
        h11 = s**3 - s**2
        return tuple(
            h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1
            for y0, d0, y1, d1 in zip(self.y[i], self.dy[i], self.y[i + 1], self.dy[i + 1])
        )

    @property
    def final(self):
        return self.y[-1]


def _axpy(y, h, coeffs, ks):
    out = list(y)
    for c, k in zip(coeffs, ks):
        if c:
            for j, kj in enumerate(k):
                out[j] += h * c * kj
    return tuple(out)


def integrate(system, initial, tspan, config=IntegrationConfig(), t_eval=(), first_step=None):
    """Adaptive Verner 6(5) integration of y' = system(t, y).

    Steps are clipped so that every point of ``t_eval`` is hit exactly.  The
    arithmetic runs at ``config.prec`` bits; the result is deterministic.
    """
    with mpmath.workprec(config.prec):
        mpf = mpmath.mpf
        A = [[mpf(c.numerator) / c.denominator for c in row] for row in _A]
        C = [mpf(c.numerator) / c.denominator for c in _C]
        B6 = [mpf(c.numerator) / c.denominator for c in _B6]
        E = [mpf((a - b).numerator) / (a - b).denominator for a, b in zip(_B6, _B5)]
        rtol, atol = mpf(config.rtol), mpf(config.atol)

        t0, t1 = (to_numeric(v, mpf) for v in tspan)
        direction = 1 if t1 >= t0 else -1
        t_eval = (to_numeric(v, mpf) for v in t_eval)
        stops = sorted({t for t in t_eval if (t - t0) * direction > 0 and (t1 - t) * direction >= 0},
                       key=lambda t: direction * t)
        stops.append(t1)
        y = tuple(to_numeric(v, mpf) for v in initial)
        t = t0
        f0 = tuple(system(t, y))
        if len(f0) != len(y):
            raise ValueError("system returned a vector of the wrong length")
        span = abs(t1 - t0)
        h = mpf(first_step) if first_step else span * mpf(10) ** -3
        h = direction * min(abs(h), span) if span else 0
        ts, ys, dys = [t], [y], [f0]
        steps = rejected = 0
        tiny = mpf(2) ** (-config.prec // 2)
        for target in stops:
            while direction * (target - t) > 0:
                if steps + rejected >= config.max_steps:
                    raise IntegrationError(f"step budget of {config.max_steps} exhausted", float(t))
                last = direction * (t + h - target) >= 0
                hs = target - t if last else h
                if abs(hs) <= tiny * max(1, abs(t)):
                    raise IntegrationError("step size underflow", float(t))
                ks = [f0]
                for i in range(1, 8):
                    ks.append(tuple(system(t + C[i] * hs, _axpy(y, hs, A[i], ks))))
                y_new = _axpy(y, hs, B6, ks)
                f_new = tuple(system(t + hs, y_new))
                ks.append(f_new)
                err = _axpy((mpf(0),) * len(y), hs, E, ks)
                scale = [atol + rtol * max(abs(a), abs(b)) for a, b in zip(y, y_new)]
                ratio = max((abs(e) / s for e, s in zip(err, scale)), default=mpf(0))
                if not mpmath.isfinite(ratio):
                    rejected += 1
                    h = hs / 4
                    continue
                if ratio <= 1:
                    t = target if last else t + hs
                    y, f0 = y_new, f_new
                    ts.append(t)
                    ys.append(y)
                    dys.append(f0)
                    steps += 1
                else:
                    rejected += 1
                grow = mpf(5) if ratio == 0 else min(mpf(5), max(mpf(1) / 5, mpf("0.9") * ratio ** (mpf(-1) / ORDER)))
                h = hs * grow if (ratio > 1 or not last) else h
        return Trajectory(tuple(ts), tuple(ys), tuple(dys), steps, rejected)


# --- Hamiltonian flow ---------------------------------------------------------


def hamiltonian_system(params):
    def system(t, y):
        return tuple(vector_field(PhaseState(*y), params))

    return system


def energy_drift(params, initial, t_end, config=IntegrationConfig(), samples=50):
    """Max |H(t) - H(0)| / max(1, |H(0)|) and the same relative to |H(0)|."""
    with mpmath.workprec(config.prec):
        y0 = tuple(to_numeric(v, mpmath.mpf) for v in initial)
        t_eval = [mpmath.mpf(t_end) * i / samples for i in range(1, samples + 1)]
        traj = integrate(hamiltonian_system(params), y0, (0, t_end), config, t_eval)
        H0 = hamiltonian(PhaseState(*y0), params)
        worst = max(abs(hamiltonian(PhaseState(*y), params) - H0) for y in traj.y)
        return {
            "H0": H0,
            "absolute": worst,
            "scaled": worst / max(1, abs(H0)),
            "relative": worst / abs(H0) if H0 else mpmath.inf,
            "trajectory": traj,
        }


# --- series versus ODE ----------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    """Max relative deviations of each series from its ODE continuation."""

    window: tuple
    deviations: tuple
    wronskian_deviation: object
    samples: int
    steps: int

    @property
    def max_deviation(self):
        return max(self.deviations)

    def passes(self, tol=1e-10):
        return self.max_deviation <= tol and self.wronskian_deviation <= tol


def _check_window(nf, Hv, lo, hi, margin=F(1, 100)):
    """Reject windows that reach within a relative margin of a real pole of r."""
    if not 0 < lo < hi:
        raise ValueError("window must satisfy 0 < x_lo < x_hi")
    from .variational import H as Hsym

    den = sympy.denom(sympy.together(nf.r.subs(Hsym, sympy.Rational(Hv))))
    for root in sympy.Poly(den, nf.var).real_roots():
        if root == 0:
            continue
        rv = F(str(sympy.Rational(sympy.N(root, 30))))
        if lo * (1 - margin) <= rv <= hi * (1 + margin):
            raise ValueError(f"window [{lo}, {hi}] touches a singularity of r at x = {float(rv)}")


def _r_callable(nf, Hv):
    from .variational import H as Hsym

    r = nf.r.subs(Hsym, sympy.Rational(Hv))
    return sympy.lambdify(nf.var, r, modules="mpmath")


def solution_values(series, xv, Hv, dv=0):
    return series.evaluate(xv, Hv, dv), series.derivative().evaluate(xv, Hv, dv)


def _continue(system, series, start, end, xs, config, H):
    """ODE continuation of a series from x = start, sampled at xs.

    The equation is linear, so the seed is scaled to unit size first; the
    absolute tolerance then means the same thing for x^4 and x^-3 solutions.
    """
    y0 = solution_values(series, start, H)
    unit = abs(y0[0]) or 1
    traj = integrate(system, tuple(v / unit for v in y0), (start, end), config, t_eval=xs)
    hit = dict(zip(traj.t, traj.y))
    vals = [tuple(v * unit for v in (hit[x] if x in hit else traj.at(x))) for x in xs]
    return vals, traj.steps


def validate_pair(nf, pair, window=(F(1, 100), F(1, 10)), config=IntegrationConfig(), H=1, samples=20):
    """Integrate zeta'' = r zeta from series data and compare along the window.

    The solution with the larger exponent (small near 0) is seeded at x_lo and
    integrated forward; the other is seeded at x_hi and integrated backward,
    so each runs in the direction where it dominates.
    """
    pair = normalize_wronskian(pair)
    with mpmath.workprec(config.prec):
        mpf = mpmath.mpf
        lo, hi = F(window[0]), F(window[1])
        _check_window(nf, H, lo, hi)
        rf = _r_callable(nf, H)

        def system(t, y):
            return (y[1], rf(t) * y[0])

        lo_m, hi_m = to_numeric(lo, mpf), to_numeric(hi, mpf)
        xs = [lo_m + (hi_m - lo_m) * i / samples for i in range(samples + 1)]
        big, small = (pair.first, pair.second)
        if pair.exponents[0] < pair.exponents[1]:
            big, small = small, big
        runs = []
        steps = 0
        for series, start, end in ((big, lo_m, hi_m), (small, hi_m, lo_m)):
            vals, n = _continue(system, series, start, end, xs, config, H)
            steps += n
            runs.append((series, vals))
        deviations = []
        for series, vals in runs:
            worst = mpf(0)
            for x, (v, _) in zip(xs, vals):
                exact = series.evaluate(x, H)
                worst = max(worst, abs(v - exact) / abs(exact))
            deviations.append(worst)
        # numeric Wronskian of the two continuations, ordered as (first, second)
        (s1, v1), (s2, v2) = runs
        if s1 is not pair.first:
            v1, v2 = v2, v1
        wdev = max(abs(a[0] * b[1] - b[0] * a[1] - 1) for a, b in zip(v1, v2))
        return ValidationReport((lo, hi), tuple(deviations), wdev, samples, steps)


def series_vs_ode(nf, series, window=(F(1, 100), F(1, 10)), config=IntegrationConfig(), H=1, samples=20):
    """Seed one series at x_lo, integrate to x_hi, return max relative deviation."""
    with mpmath.workprec(config.prec):
        mpf = mpmath.mpf
        lo, hi = F(window[0]), F(window[1])
        _check_window(nf, H, lo, hi)
        rf = _r_callable(nf, H)
        lo_m, hi_m = to_numeric(lo, mpf), to_numeric(hi, mpf)
        xs = [lo_m + (hi_m - lo_m) * i / samples for i in range(1, samples + 1)]
        vals, _ = _continue(lambda t, y: (y[1], rf(t) * y[0]), series, lo_m, hi_m, xs, config, H)
        return max(abs(v[0] - series.evaluate(x, H)) / abs(series.evaluate(x, H)) for x, v in zip(xs, vals))
