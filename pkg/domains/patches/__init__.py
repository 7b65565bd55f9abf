"""W/V patch construction, band coefficients and patch measures."""

from domains.patches.patches import (
    MIN_ALPHA,
    GammaConfig,
    PatchKind,
    PatchSpec,
    analytic_measure_coefficient,
    choose_gammas,
    disjointness_check,
    evaluation_grid,
    make_patch,
    patch_measure,
    sample_points,
)

__all__ = [
    "MIN_ALPHA",
    "GammaConfig",
    "PatchKind",
    "PatchSpec",
    "analytic_measure_coefficient",
    "choose_gammas",
    "disjointness_check",
    "evaluation_grid",
    "make_patch",
    "patch_measure",
    "sample_points",
]
