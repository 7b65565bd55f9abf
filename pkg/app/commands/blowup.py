"""blowup: the truncation experiment, optionally with the constant-exponent control."""

import numpy as np
from loguru import logger

from app.commands.common import CommandContext, Outcome
from app.utils.config import RunConfig
from app.utils.helpers import fmt17, ln_of
from app.utils.reports import dump_csv, render_table
from domains.counterexample.experiment import ExperimentSetup, blowup_experiment, positive_control
from domains.counterexample.image import ImageTable
from domains.counterexample.schedule import select_alphas

BLOWUP_COLUMNS = ["N", "ln_modular_h", "ln_norm_h", "ln_modular_H_lower", "ln_norm_H_lower", "min_ReH", "cross_ok"]
CONTROL_COLUMNS = ["N", "ln_norm_h", "ln_norm_H_lower", "ratio"]
NORM_CONVERGENCE = 1e-6
TERM_SLACK = 1e-12
INCREMENT_RATIO = 0.5


def cmd_blowup(cfg: RunConfig, ctx: CommandContext) -> Outcome:
    E = cfg.build_ellipsoid()
    section = cfg.blowup
    setup = ExperimentSetup(
        E=E,
        gammas=cfg.build_gammas(),
        field=cfg.build_field(),
        patch_grid=cfg.grids.patch,
        v_points=cfg.grids.v_eval,
        ln_budget=section.ln_budget,
        tol=section.tol,
    )
    schedule = select_alphas(section.n_max, setup.field, section.ln_budget)
    table = ImageTable(schedule, setup.gammas, setup.patch_grid, setup.v_points, E)
    rows = blowup_experiment(section.n_max, setup, table)

    dump_csv(
        ctx.out_dir / "blowup.csv",
        BLOWUP_COLUMNS,
        [
            [str(r.N), fmt17(ln_of(r.modular_h)), fmt17(ln_of(r.norm_h)), fmt17(ln_of(r.modular_H_lower)),
             fmt17(ln_of(r.norm_H_lower)), fmt17(r.min_ReH_on_Vk), str(r.cross_positivity_ok).lower()]
            for r in rows
        ],
    )
    render_table(
        f"Truncation experiment ({E.label}, p0={setup.field.p0:g}, A={setup.field.psi.amplitude:g})",
        BLOWUP_COLUMNS,
        [
            (r.N, ln_of(r.modular_h), ln_of(r.norm_h), ln_of(r.modular_H_lower), ln_of(r.norm_H_lower),
             r.min_ReH_on_Vk, r.cross_positivity_ok)
            for r in rows
        ],
    )

    outcome = Outcome(
        metrics={
            "ellipsoid": E.label,
            "ln_alphas": list(schedule.ln_alphas),
            "schedule_violations": schedule.violations(),
            "rows": [
                {
                    "N": r.N,
                    "ln_modular_h": ln_of(r.modular_h),
                    "ln_norm_h": ln_of(r.norm_h),
                    "ln_modular_H_lower": ln_of(r.modular_H_lower),
                    "ln_modular_H_terms": [ln_of(term) for term in r.modular_H_terms],
                    "ln_norm_H_lower": ln_of(r.norm_H_lower),
                    "min_ReH": r.min_ReH_on_Vk,
                    "cross_ok": r.cross_positivity_ok,
                    "tail_bound": r.tail_bound,
                }
                for r in rows
            ],
        }
    )
    outcome.check(not schedule.violations(), f"schedule invariants violated: {schedule.violations()}")

    # input side: bounded modular with geometrically decaying increments
    mod_h = [r.modular_h.to_float() for r in rows]
    increments = np.diff([0.0, *mod_h])
    outcome.check(bool(np.all(increments >= 0.0)), "modular(h^(N)) decreased with N")
    for k in range(2, len(increments)):
        if increments[k - 1] > 0.0:
            outcome.check(
                increments[k] <= INCREMENT_RATIO * increments[k - 1],
                f"modular increment ratio {increments[k] / increments[k - 1]:.3g} > {INCREMENT_RATIO} at N={k + 1}",
            )
    for r in rows:
        outcome.check(r.modular_h.to_float() <= r.tail_bound, f"N={r.N}: modular(h) above the certified tail bound")
    ln_norm_h = [ln_of(r.norm_h) for r in rows]
    outcome.check(
        abs(ln_norm_h[-1] - ln_norm_h[-2]) < NORM_CONVERGENCE,
        f"ln norm(h) still moving by {abs(ln_norm_h[-1] - ln_norm_h[-2]):.3e} at N={rows[-1].N}",
    )

    # image side: certified lower bound grows
    for r in rows:
        outcome.check(r.cross_positivity_ok, f"N={r.N}: cross-term positivity failed")
    for prev, cur in zip(rows, rows[1:]):
        for k, (before, after) in enumerate(zip(prev.modular_H_terms, cur.modular_H_terms), start=1):
            outcome.check(
                after.ln_mag >= before.ln_mag - TERM_SLACK * max(1.0, abs(before.ln_mag)),
                f"N={cur.N}: V_{k} term of M(N) decreased",
            )
    ln_norm_H = [ln_of(r.norm_H_lower) for r in rows]
    outcome.check(bool(np.all(np.diff(ln_norm_H) > 0.0)), "ln norm of the image lower bound is not strictly increasing")

    Ns = np.array([r.N for r in rows], dtype=float)
    M = np.array([r.modular_H_lower.to_float() for r in rows])
    slope = float(np.polyfit(Ns, M, 1)[0])
    m_over_n = (M / Ns)[1:]
    outcome.metrics["M_over_N"] = m_over_n.tolist()
    outcome.metrics["M_slope"] = slope
    outcome.check(slope > 0.0, f"linear fit of M(N) has slope {slope:.3e} <= 0")

    c_lo = ctx.fixtures.lookup(E.label, "blowup_m_over_n_min")
    c_hi = ctx.fixtures.lookup(E.label, "blowup_m_over_n_max")
    golden = c_lo is not None and c_hi is not None
    outcome.metrics["golden_m_over_n"] = golden
    if golden and not ctx.calibrate:
        outcome.check(
            bool(np.all((m_over_n >= c_lo) & (m_over_n <= c_hi))),
            f"M(N)/N outside golden [{c_lo:.4g}, {c_hi:.4g}]",
        )
    elif not golden and not ctx.calibrate:
        logger.warning(f"no golden M(N)/N bounds for {E.label}; run with --calibrate to store them")
    c_H = ctx.fixtures.lookup(E.label, "image_c_H")
    if c_H is not None:
        for r in rows:
            outcome.check(r.min_ReH_on_Vk >= 0.5 * c_H, f"N={r.N}: -Re H/lambda_k = {r.min_ReH_on_Vk:.4g} < c_H/2")

    outcome.calibration = {
        "blowup_m_over_n_min": 0.5 * float(m_over_n.min()),
        "blowup_m_over_n_max": 2.0 * float(m_over_n.max()),
    }

    if section.positive_control:
        control = positive_control(section.n_max, section.p_const, setup, table)
        dump_csv(
            ctx.out_dir / "positive_control.csv",
            CONTROL_COLUMNS,
            [[str(c.N), fmt17(ln_of(c.norm_h)), fmt17(ln_of(c.norm_H_lower)), fmt17(c.ratio)] for c in control],
        )
        render_table(
            f"Constant-exponent control (p={section.p_const:g})",
            CONTROL_COLUMNS,
            [(c.N, ln_of(c.norm_h), ln_of(c.norm_H_lower), c.ratio) for c in control],
        )
        ratios = [c.ratio for c in control]
        spread = max(ratios) / min(ratios) if min(ratios) > 0 else float("inf")
        outcome.metrics["control"] = [
            {"N": c.N, "ln_norm_h": ln_of(c.norm_h), "ln_norm_H_lower": ln_of(c.norm_H_lower), "ratio": c.ratio}
            for c in control
        ]
        outcome.metrics["control_spread"] = spread
        outcome.check(spread <= section.max_control_spread, f"control ratio spread {spread:.3g} > {section.max_control_spread:g}")

    logger.info(f"blow-up experiment finished with {len(outcome.failures)} failed check(s)")
    return outcome
