"""Variable-exponent machinery: log-domain scalars, exponent fields, modulars and norms."""

from domains.varexp.bisection import bisect_decreasing, expand_bracket
from domains.varexp.exponent import ExponentField, PsiParams, PsiShape, exponent_eval, psi_eval, psi_from_log
from domains.varexp.logscalar import LogScalar, log_sum
from domains.varexp.luxemburg import DEFAULT_TOL, ModularIntegrand, PatchSum, luxemburg_norm, modular
from domains.varexp.quasimetric import (
    QuasimetricComparison,
    euclidean_distance,
    log_holder_modulus,
    quasimetric,
    quasimetric_comparison,
    sample_boundary_pairs,
    straddling_pairs,
)

__all__ = [
    "DEFAULT_TOL",
    "ExponentField",
    "LogScalar",
    "ModularIntegrand",
    "PatchSum",
    "PsiParams",
    "PsiShape",
    "QuasimetricComparison",
    "bisect_decreasing",
    "euclidean_distance",
    "expand_bracket",
    "exponent_eval",
    "log_holder_modulus",
    "log_sum",
    "luxemburg_norm",
    "modular",
    "psi_eval",
    "psi_from_log",
    "quasimetric",
    "quasimetric_comparison",
    "sample_boundary_pairs",
    "straddling_pairs",
]
