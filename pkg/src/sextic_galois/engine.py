"""Decision procedure: non-integrability verdicts with an evidence trace.

The rule table works from the tau classification alone:

    tau irrational (or tau^2 < 0)           -> ThV6-i
    tau rational, not resonant              -> ThV6-ii
    resonant, |tau| != 2/3                  -> ThV6-iii
    |tau| == 2/3 (A == 0), D != 0           -> ThV6-iv
    |tau| == 2/3, D == 0                    -> Inconclusive

The Legendre reduction and, on request, live residue tables are attached to
the trace as supporting evidence.  They never override the table; a mismatch
is reported as a warning and in the cross-check record.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import OutOfScope, TruncationCapExceeded
from .exactnum import classify_tau, format_rational, tau_of
from .legendre import solvability_verdict
from .model import PotentialParams
from .obstruction import obstruction_found, residue_table
from .variational import reduce_to_legendre

NON_INTEGRABLE = "NonIntegrable"
INCONCLUSIVE = "Inconclusive"
OUT_OF_SCOPE = "OutOfScope"
RULES = ("ThV6-i", "ThV6-ii", "ThV6-iii", "ThV6-iv")
EDGE_TAU = Fraction(2, 3)


@dataclass(frozen=True)
class Verdict:
    conclusion: str
    rule: object = None
    trace: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def __post_init__(self):
        if (self.rule is not None) != (self.conclusion == NON_INTEGRABLE):
            raise ValueError("rule must be given exactly for NonIntegrable verdicts")
        if not self.trace:
            raise ValueError("a verdict needs at least one trace record")

    @property
    def non_integrable(self):
        return self.conclusion == NON_INTEGRABLE


def _tau_record(cls):
    rec = {"step": "classify_tau", "tau_squared": format_rational(cls.tau_squared), "status": cls.status}
    if cls.tau is not None:
        rec["tau"] = str(cls.tau) if not cls.rational else format_rational(cls.tau)
    rec["realizations"] = [
        {"sign": sign, "family": family, "k": k} for sign, family, k in cls.realizations
    ]
    return rec


def _legendre_record(params):
    try:
        red = reduce_to_legendre(params)
    except OutOfScope as exc:
        return {"step": "legendre_reduction", "skipped": str(exc)}, []
    branches = []
    warnings = []
    for sign, lp in sorted(red.branches.items(), reverse=True):
        entry = {"sign": sign}
        if lp is None:
            entry["excluded"] = red.excluded[sign]
        else:
            v = solvability_verdict(lp)
            entry.update(p=_scalar(lp.p), q=_scalar(lp.q), conclusion=v.conclusion,
                         fired_rules=list(v.fired_rules))
        branches.append(entry)
    rec = {"step": "legendre_reduction", "q": format_rational(red.q), "branches": branches}
    return rec, warnings


def _scalar(v):
    return format_rational(v) if isinstance(v, Fraction) else str(v)


def _cross_check(cls, d_nonzero, table_says_obstructed, cap):
    """Residue tables at each realized (family, k) of this tau."""
    rec = {"step": "residue_cross_check", "tables": []}
    found = False
    for sign, family, k in cls.realizations:
        try:
            opts = {} if cap is None else {"cap": cap}
            report = residue_table(k, families=(family,), **opts)
        except TruncationCapExceeded as exc:
            rec["tables"].append({"family": family, "k": k, "skipped": str(exc)})
            rec["complete"] = False
            continue
        hit = obstruction_found(report, d_nonzero)
        found = found or hit
        rec["tables"].append({
            "sign": sign,
            "family": family,
            "k": k,
            "tau": format_rational(tau_of(k, family)),
            "any_nonzero_without_d": report.any_nonzero_without_d,
            "nonzero_requires_d": report.nonzero_requires_d,
            "nonzero_components": [str(c) for _, c in report.nonzero],
            "obstruction": hit,
        })
    rec.setdefault("complete", True)
    rec["residues_obstruct"] = found
    rec["agrees"] = found == table_says_obstructed
    return rec


def decide(params, cross_check=False, cap=None):
    """Verdict for a PotentialParams value (see module docstring)."""
    if not isinstance(params, PotentialParams):
        raise TypeError("decide expects PotentialParams")
    if params.C == 0:
        reason = "C = 0: the invariant plane carries no particular solution of the required form"
        return Verdict(OUT_OF_SCOPE, None, [{"step": "scope", "reason": reason}], [])

    cls = classify_tau(params.A, params.C)
    trace = [_tau_record(cls)]
    warnings = [
        "q = 1/6 is used for the Legendre parameter (the printed coefficient reads as q rather than q^2)",
        "inverse fundamental matrix uses zeta_12^(1) in its bottom-right entry",
    ]
    leg, leg_warn = _legendre_record(params)
    trace.append(leg)
    warnings.extend(leg_warn)

    if not cls.rational:
        rule, conclusion = "ThV6-i", NON_INTEGRABLE
        why = "tau^2 < 0" if cls.status == "negative" else "tau irrational"
    elif not cls.resonant:
        rule, conclusion = "ThV6-ii", NON_INTEGRABLE
        why = "tau rational and outside both resonant families"
    elif cls.tau != EDGE_TAU:
        rule, conclusion = "ThV6-iii", NON_INTEGRABLE
        ks = sorted({k for _, _, k in cls.realizations if k != 1})
        why = f"resonant with k in {ks}, some k != 1"
    elif params.D != 0:
        rule, conclusion = "ThV6-iv", NON_INTEGRABLE
        why = "|tau| = 2/3 (k = 1 branch) and D != 0"
    else:
        rule, conclusion = None, INCONCLUSIVE
        why = "|tau| = 2/3 and D = 0: no listed condition applies"
    if cls.rational and cls.tau == EDGE_TAU:
        trace.append({
            "step": "edge_branches",
            "note": "tau = +2/3 realizes k = 0 (family 2k+2/3) while tau = -2/3 realizes k = 1; "
                    "the D gate is applied to both",
        })
    if cls.rational and not cls.resonant and cls.tau.denominator == 1 and cls.tau.numerator % 2:
        warnings.append("odd integer tau: the Legendre test is inconclusive here; ThV6-ii rests on the rule table")
    trace.append({"step": "rule", "rule": rule, "conclusion": conclusion, "reason": why})

    if cross_check and cls.resonant:
        rec = _cross_check(cls, params.D != 0, conclusion == NON_INTEGRABLE, cap)
        trace.append(rec)
        if not rec["agrees"]:
            warnings.append("live residue tables disagree with the rule table")
    return Verdict(conclusion, rule, trace, warnings)
