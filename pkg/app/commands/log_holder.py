"""check-log-holder: the exponent's modulus along a refining pair family, plus the quasimetric."""

import numpy as np

from app.commands.common import CommandContext, Outcome
from app.models.schemas import ModulusRow
from app.utils.config import RunConfig
from app.utils.helpers import growth_factor
from app.utils.reports import render_table
from domains.varexp.quasimetric import (
    log_holder_modulus,
    quasimetric_comparison,
    sample_boundary_pairs,
    straddling_pairs,
)

FORMULA_GAP = 1e-12


def cmd_check_log_holder(cfg: RunConfig, ctx: CommandContext) -> Outcome:
    E = cfg.build_ellipsoid()
    field = cfg.build_field()
    control = cfg.build_control_field()
    section = cfg.log_holder

    pairs = [straddling_pairs(alpha, E) for alpha in section.alphas]
    moduli = [log_holder_modulus([pair], field) for pair in pairs]
    rows = [
        ModulusRow(
            alpha=alpha,
            counterexample=modulus,
            growth=growth_factor(moduli[: i + 1]),
            control=log_holder_modulus([pair], control),
        )
        for i, (alpha, pair, modulus) in enumerate(zip(section.alphas, pairs, moduli, strict=True))
    ]

    render_table("Log-Hoelder modulus", ["alpha", "counterexample", "growth", "control"], [(r.alpha, r.counterexample, r.growth, r.control) for r in rows])

    growth = growth_factor([r.counterexample for r in rows])
    controls = [r.control for r in rows]
    drift = max(controls) / min(controls) if min(controls) > 0 else float("inf")

    comparison = quasimetric_comparison(*sample_boundary_pairs(section.n_pairs, np.random.default_rng(cfg.seed), E), E)
    render_table(
        f"Quasimetric comparison ({E.label})",
        ["delta", "c (lower)", "C (upper)", "max formula gap", "pairs"],
        [(comparison.delta, comparison.lower_constant, comparison.upper_constant, comparison.max_formula_gap, comparison.sample_count)],
    )

    outcome = Outcome(
        metrics={
            "rows": [r.model_dump() for r in rows],
            "growth_factor": growth,
            "growth_by_alpha": {f"{r.alpha:g}": r.growth for r in rows},
            "control_drift": drift,
            "quasimetric": comparison.model_dump(),
        }
    )
    outcome.check(growth >= section.min_growth, f"counterexample modulus grew only x{growth:.3g} (< x{section.min_growth:g})")
    outcome.check(drift <= section.max_control_drift, f"control modulus drifted x{drift:.3g} (> x{section.max_control_drift:g})")
    outcome.check(comparison.lower_constant > 0.0, "quasimetric lower comparison constant is not positive")
    outcome.check(
        comparison.max_formula_gap <= FORMULA_GAP,
        f"chart and direct quasimetric differ by {comparison.max_formula_gap:.3e} (> {FORMULA_GAP:g})",
    )
    return outcome
