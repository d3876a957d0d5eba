"""Command-line front end: ``sextic-galois <command> ...`` (or ``python -m sextic_galois``).

Every command prints one JSON report on stdout.  Exit codes: 0 report
produced, 2 input outside the covered family, 3 parse or input error,
4 truncation cap exceeded.
"""

import argparse
import csv
import json
import re
import sys
from fractions import Fraction

from . import __version__
from .engine import decide
from .errors import IntegrationError, InvalidParameters, OutOfScope, TruncationCapExceeded
from .exactnum import (
    MINUS_FAMILY,
    PLUS_FAMILY,
    ParamCoeff,
    format_rational,
    parse_rational,
    parse_scalar,
)
from .frobenius import frobenius_pair, frobenius_series, indicial_roots
from .legendre import LegendreParams, exponents, monodromy_generators, solvability_verdict
from .model import PotentialParams
from .numeric import IntegrationConfig, validate_pair
from .obstruction import FAMILIES, truncation_cap, residue_table
from .variational import normal_form, sym, ve1_at_infinity

SCHEMA_VERSION = "1.0"
EXIT_OK, EXIT_SCOPE, EXIT_PARSE, EXIT_CAP = 0, 2, 3, 4

WARNINGS = {
    "q": "Legendre q is taken as 1/6; the reduced equation prints 1/6 where q^2 belongs",
    "inverse": "the inverse fundamental matrix carries zeta_12^(1) in its bottom-right entry",
    "ve2_sign": "the homogeneous xi_22 term uses -15/4, matching the first variational equation",
    "r_x6": "normal forms are computed from their operators; the x^6 coefficient is -3H^2, not -H^2",
}


class CliError(Exception):
    def __init__(self, code, kind, message):
        super().__init__(message)
        self.code, self.kind, self.message = code, kind, message


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let "-8/3" and the family name "-2k+4/3" through as values
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$|^-2k\+4/3$")

    def error(self, message):
        # argparse would exit with 2, which is reserved for out-of-scope input
        raise CliError(EXIT_PARSE, "parse", message)


# --- serialization -----------------------------------------------------------


def jsonable(value):
    """Exact values become strings; rationals always as "num/den"."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, ParamCoeff):
        return {
            "text": str(value),
            "a": [format_rational(c) for c in value.a],
            "b": [format_rational(c) for c in value.b],
        }
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (str, float, int)):
        return value
    return str(value)


def make_report(command, inputs, payload, trace=(), warnings=(), error=None):
    report = {
        "schemaVersion": SCHEMA_VERSION,
        "command": command,
        "inputs": jsonable(inputs),
        "payload": jsonable(payload) if payload is not None else None,
        "trace": [jsonable(t) for t in trace],
        "warnings": list(warnings),
    }
    if error is not None:
        report["error"] = error
    return report


def _rational(token, name):
    try:
        return parse_rational(token)
    except ValueError:
        raise CliError(EXIT_PARSE, "parse", f"--{name}: cannot parse {token!r} as an exact rational") from None


def _scalar(token, name):
    try:
        return parse_scalar(token)
    except ValueError:
        raise CliError(EXIT_PARSE, "parse", f"--{name}: cannot parse {token!r} as a rational or sqrt(m/n)") from None


# --- commands -------------------------------------------------------------------


def cmd_check(args):
    params = PotentialParams(*(_rational(getattr(args, n), n) for n in "ABCD"), h=_rational(args.h, "h"))
    inputs = {n: getattr(params, n) for n in ("A", "B", "C", "D", "h")}
    verdict = decide(params, cross_check=args.cross_check, cap=args.cap)
    payload = {"conclusion": verdict.conclusion, "rule": verdict.rule}
    report = make_report("check", inputs, payload, verdict.trace, [WARNINGS["q"], *verdict.warnings[1:]])
    return report, EXIT_SCOPE if verdict.conclusion == "OutOfScope" else EXIT_OK


def cmd_legendre(args):
    p, q = _scalar(args.p, "p"), _scalar(args.q, "q")
    try:
        params = LegendreParams(p, q)
    except InvalidParameters as exc:
        raise CliError(EXIT_PARSE, "invalid", str(exc)) from None
    ex = exponents(params)
    gens = monodromy_generators(params)
    verdict = solvability_verdict(params)
    payload = {
        "exponents": {
            "at_plus_one": [str(v) if not isinstance(v, Fraction) else v for v in ex.at_plus_one],
            "at_minus_one": [str(v) if not isinstance(v, Fraction) else v for v in ex.at_minus_one],
            "at_infinity": [str(v) if not isinstance(v, Fraction) else v for v in ex.at_infinity],
        },
        "monodromy_diagonals": [
            {"off_diagonal": g.off_diagonal, "diagonal": [str(u) for u in g.diagonal]} for g in gens
        ],
        "conclusion": verdict.conclusion,
        "fired_rules": list(verdict.fired_rules),
        "witness": verdict.witness,
    }
    return make_report("legendre", {"p": str(p), "q": str(q)}, payload), EXIT_OK


def cmd_residues(args):
    families = FAMILIES if args.branch == "both" else (args.branch,)
    h = _rational(args.h, "h")
    if h == 0:
        raise CliError(EXIT_SCOPE, "scope", "h = 0 collapses the particular solution")
    report = residue_table(args.k, families=families, cap=args.cap)
    H = h**3
    rows = []
    for (family, comp), value in report.per_component.items():
        rows.append({
            "family": family,
            "tau": report.taus[family],
            "component": comp.label,
            "row": comp.row,
            "pair": list(comp.pair),
            "residue": value,
            "at_h": {
                "d_free": Fraction(ParamCoeff(value.a).evaluate(H)),
                "d_coefficient": Fraction(ParamCoeff(value.b).evaluate(H)),
            },
        })
    payload = {
        "k": report.k,
        "taus": report.taus,
        "anyNonzeroWithoutD": report.any_nonzero_without_d,
        "nonzeroRequiresD": report.nonzero_requires_d,
        "components": rows,
    }
    inputs = {"k": args.k, "branch": args.branch, "h": h, "cap": args.cap}
    return make_report("residues", inputs, payload, [], [WARNINGS["inverse"], WARNINGS["r_x6"]]), EXIT_OK


def _equation(name, tau_token):
    tau = None
    if name in ("ve1-xi11", "r1"):
        if tau_token is None:
            raise CliError(EXIT_PARSE, "parse", f"--tau is required for {name}")
        tau = _rational(tau_token, "tau")
    op11, op12 = ve1_at_infinity(sym(tau) if tau is not None else sym(0))
    op = op11 if name in ("ve1-xi11", "r1") else op12
    return normal_form(op), tau


def factored(series):
    """x^(rho) * (1 + c1*x^3 + ...) rendering of a single-strand series."""
    terms = series.terms()
    rho = min(terms)
    lead = terms[rho].scalar()
    parts = []
    for e, c in terms.items():
        rel = c / lead
        step = e - rho
        coef = str(rel)
        if step == 0:
            parts.append(coef)
            continue
        if rel.b or len([v for v in rel.a if v]) > 1:
            coef = f"({coef})"
        parts.append(f"{coef}*x^{step}")
    body = " + ".join(parts).replace("+ -", "- ")
    if series.exact_below is not None:
        body += f" + O(x^{series.exact_below - rho})"
    prefix = "" if lead == 1 else f"{format_rational(lead)} * "
    ex = f"{rho}" if rho.denominator == 1 else f"({rho})"
    return f"{prefix}x^{ex} * ({body})"


def cmd_series(args):
    nf, tau = _equation(args.eq, args.tau)
    roots = indicial_roots(nf)
    out = []
    for rho in roots:
        try:
            s = frobenius_series(nf, rho, args.order, cap=args.cap)
            out.append({"exponent": rho, "series": factored(s), "coefficients": s.terms()})
        except Exception as exc:  # LogRequired: report and continue
            out.append({"exponent": rho, "log_required": str(exc)})
    payload = {"equation": args.eq, "r": str(nf.r), "solutions": out}
    inputs = {"eq": args.eq, "tau": tau, "order": args.order}
    return make_report("series", inputs, payload), EXIT_OK


def _window(token):
    try:
        lo, hi = token.split(":")
        return Fraction(lo), Fraction(hi)
    except ValueError:
        raise CliError(EXIT_PARSE, "parse", f"--window: expected lo:hi, got {token!r}") from None


def cmd_validate(args):
    nf, tau = _equation(args.eq, args.tau)
    window = _window(args.window)
    h = _rational(args.h, "h")
    config = IntegrationConfig(rtol=args.rtol, atol=args.atol, prec=args.prec)
    pair = frobenius_pair(nf, args.order, cap=args.cap)
    if pair.log_flag:
        raise CliError(EXIT_SCOPE, "scope", "the exponents need a logarithmic second solution")
    try:
        rep = validate_pair(nf, pair, window, config, H=h**3)
    except ValueError as exc:
        raise CliError(EXIT_PARSE, "invalid", str(exc)) from None
    payload = {
        "deviations": [float(d) for d in rep.deviations],
        "wronskian_deviation": float(rep.wronskian_deviation),
        "passes_1e-10": rep.passes(1e-10),
        "steps": rep.steps,
    }
    inputs = {"eq": args.eq, "tau": tau, "window": list(window), "h": h, "order": args.order,
              "rtol": args.rtol, "atol": args.atol, "prec": args.prec}
    return make_report("validate", inputs, payload), EXIT_OK


SWEEP_COLUMNS = ("conclusion", "rule", "tau_squared", "tau_status")


def cmd_sweep(args):
    try:
        with open(args.input, newline="") as fh:
            reader = csv.DictReader(fh)
            fields = list(reader.fieldnames or [])
            rows = list(reader)
    except OSError as exc:
        raise CliError(EXIT_PARSE, "io", f"cannot read {args.input}: {exc}") from None
    missing = [c for c in "ABCD" if c not in fields]
    if missing:
        raise CliError(EXIT_PARSE, "parse", f"{args.input}: missing column(s) {', '.join(missing)}")
    out_rows = []
    counts = {}
    for lineno, row in enumerate(rows, start=2):
        vals = {}
        for col in [*"ABCD", *(["h"] if "h" in fields else [])]:
            try:
                vals[col] = parse_rational(row[col] or "")
            except ValueError:
                raise CliError(EXIT_PARSE, "parse",
                               f"{args.input}: line {lineno}, column {col}: {row[col]!r} is not an exact rational") from None
        params = PotentialParams(vals["A"], vals["B"], vals["C"], vals["D"], vals.get("h", Fraction(1)))
        verdict = decide(params)
        tau_rec = next((t for t in verdict.trace if t.get("step") == "classify_tau"), {})
        extra = {
            "conclusion": verdict.conclusion,
            "rule": verdict.rule or "",
            "tau_squared": tau_rec.get("tau_squared", ""),
            "tau_status": tau_rec.get("status", ""),
        }
        counts[verdict.rule or verdict.conclusion] = counts.get(verdict.rule or verdict.conclusion, 0) + 1
        out_rows.append({**row, **extra})
    try:
        with open(args.output, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=[*fields, *SWEEP_COLUMNS])
            writer.writeheader()
            writer.writerows(out_rows)
    except OSError as exc:
        raise CliError(EXIT_PARSE, "io", f"cannot write {args.output}: {exc}") from None
    payload = {"rows": len(out_rows), "columns": [*fields, *SWEEP_COLUMNS], "counts": counts}
    return make_report("sweep", {"in": args.input, "out": args.output}, payload), EXIT_OK


# --- entry point -------------------------------------------------------------------


def build_parser():
    parser = _Parser(prog="sextic-galois", description="Non-integrability checks for the sextic family.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="decide non-integrability for (A, B, C, D)")
    for name in "ABCD":
        p.add_argument(f"--{name}", required=True)
    p.add_argument("--h", default="1")
    p.add_argument("--cross-check", action="store_true", help="also compute live residue tables")
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("legendre", help="solvability of the associated Legendre equation")
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    p.set_defaults(func=cmd_legendre)

    p = sub.add_parser("residues", help="x^-1 coefficients of every X^-1 f2 component")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--branch", choices=("both", PLUS_FAMILY, MINUS_FAMILY), default="both")
    p.add_argument("--h", default="1")
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=cmd_residues)

    eqs = ("ve1-xi11", "ve1-xi12", "r1", "r2")
    p = sub.add_parser("series", help="exact Frobenius series at x = 0")
    p.add_argument("--eq", choices=eqs, required=True)
    p.add_argument("--tau", default=None)
    p.add_argument("--order", type=int, default=3)
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("validate", help="series versus high-precision ODE integration")
    p.add_argument("--eq", choices=eqs, required=True)
    p.add_argument("--tau", default=None)
    p.add_argument("--window", default="1/100:1/10")
    p.add_argument("--h", default="1")
    p.add_argument("--order", type=int, default=12)
    p.add_argument("--rtol", type=float, default=1e-12)
    p.add_argument("--atol", type=float, default=1e-12)
    p.add_argument("--prec", type=int, default=96)
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("sweep", help="CSV of A,B,C,D[,h] rows in, verdict columns appended")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.set_defaults(func=cmd_sweep)
    return parser


def run(argv=None):
    """Return ``(report, exit_code)`` without printing."""
    command = None
    try:
        args = build_parser().parse_args(argv)
        command = args.command
        if getattr(args, "cap", None) is None and hasattr(args, "cap"):
            args.cap = truncation_cap()
        return args.func(args)
    except CliError as exc:
        err = {"kind": exc.kind, "message": exc.message}
        return make_report(command or "", {}, None, error=err), exc.code
    except OutOfScope as exc:
        return make_report(command or "", {}, None, error={"kind": "scope", "message": exc.reason}), EXIT_SCOPE
    except TruncationCapExceeded as exc:
        return make_report(command or "", {}, None, error={"kind": "cap", "message": str(exc)}), EXIT_CAP
    except (InvalidParameters, IntegrationError) as exc:
        return make_report(command or "", {}, None, error={"kind": "invalid", "message": str(exc)}), EXIT_PARSE


def main(argv=None):
    report, code = run(argv)
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
