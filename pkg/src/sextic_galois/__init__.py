"""Exact non-integrability analysis for the sextic potential family

    H = (p_r^2 + p_z^2)/2 + r^6 + A r^2 z^4 + D r^3 z^3 + B r^4 z^2 + C z^6.

Submodules: ``exactnum`` (exact scalars), ``legendre`` (Legendre-equation
solvability), ``model`` (the Hamiltonian), ``variational`` (first and second
variational equations), ``frobenius`` (exact series), ``obstruction``
(residue detection), ``engine`` (verdicts), ``numeric`` (high-precision
checks) and ``cli``.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    IntegrationError,
    InvalidParameters,
    LogRequired,
    OutOfScope,
    RingWideningError,
    SexticGaloisError,
    TruncationCapExceeded,
)
from .exactnum import ParamCoeff, QuadraticSurd, UnitRootExp, classify_tau, rational_sqrt  # noqa: E402
from .legendre import LegendreParams, solvability_verdict  # noqa: E402
from .model import PhaseState, PotentialParams, hamiltonian, vector_field  # noqa: E402
from .frobenius import StrandSeries, frobenius_pair, frobenius_series  # noqa: E402
from .obstruction import ComponentSelector, residue_of, residue_table  # noqa: E402
from .engine import Verdict, decide  # noqa: E402

__all__ = [
    "IntegrationError",
    "InvalidParameters",
    "LogRequired",
    "OutOfScope",
    "RingWideningError",
    "SexticGaloisError",
    "TruncationCapExceeded",
    "ParamCoeff",
    "QuadraticSurd",
    "UnitRootExp",
    "classify_tau",
    "rational_sqrt",
    "LegendreParams",
    "solvability_verdict",
    "PhaseState",
    "PotentialParams",
    "hamiltonian",
    "vector_field",
    "StrandSeries",
    "frobenius_pair",
    "frobenius_series",
    "ComponentSelector",
    "residue_of",
    "residue_table",
    "Verdict",
    "decide",
]
