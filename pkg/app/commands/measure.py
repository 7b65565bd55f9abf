"""verify-measure: patch measures against their alpha^2 asymptotics."""

from loguru import logger

from app.commands.common import CommandContext, Outcome
from app.models.schemas import MeasureRow
from app.utils.config import RunConfig
from app.utils.reports import render_table
from domains.geometry.ellipsoid import Density, density_ratio_interval
from domains.patches.patches import PatchKind, analytic_measure_coefficient, make_patch, patch_measure


def cmd_verify_measure(cfg: RunConfig, ctx: CommandContext) -> Outcome:
    E = cfg.build_ellipsoid()
    gammas = cfg.build_gammas()
    grid = cfg.grids.measure
    density = cfg.measure.density
    ratio_lo, ratio_hi = density_ratio_interval(E)

    rows: list[MeasureRow] = []
    for alpha in cfg.measure.alphas:
        W = make_patch(PatchKind.SOURCE, alpha, gammas)
        V = make_patch(PatchKind.TARGET, alpha, gammas)
        s_w = patch_measure(W, grid, density, E) / alpha**2
        s_w_fine = patch_measure(W, grid.refined(), density, E) / alpha**2
        s_v = patch_measure(V, grid, density, E) / alpha**2
        limit_w = analytic_measure_coefficient(W, E, density)
        limit_v = analytic_measure_coefficient(V, E, density)
        dev_w = abs(s_w - limit_w) / limit_w
        dev_v = abs(s_v - limit_v) / limit_v

        leray_w = patch_measure(W, grid, Density.LERAY, E)
        sigma_w = patch_measure(W, grid, Density.SIGMA, E)
        ratio = leray_w / sigma_w

        tol = cfg.measure.tolerance(alpha)
        ok = dev_w <= tol and dev_v <= tol and ratio_lo * (1 - 1e-9) <= ratio <= ratio_hi * (1 + 1e-9)
        rows.append(
            MeasureRow(
                alpha=alpha,
                s_w_over_alpha2=s_w,
                s_v_over_alpha2=s_v,
                limit_w=limit_w,
                limit_v=limit_v,
                deviation_w=dev_w,
                deviation_v=dev_v,
                tolerance=tol,
                density_ratio_w=ratio,
                refinement_gap_w=abs(s_w - s_w_fine) / s_w_fine,
                ok=ok,
            )
        )
        logger.info(f"alpha={alpha:g}: S(W)/a^2={s_w:.8g} (limit {limit_w:.8g}), S(V)/a^2={s_v:.8g}")

    render_table(
        f"Patch measures ({density.value} density, {E.label})",
        ["alpha", "S(W)/a^2", "limit W", "dev W", "S(V)/a^2", "limit V", "dev V", "tol"],
        [
            (r.alpha, r.s_w_over_alpha2, r.limit_w, r.deviation_w, r.s_v_over_alpha2, r.limit_v, r.deviation_v, r.tolerance)
            for r in rows
        ],
    )

    outcome = Outcome(
        metrics={
            "ellipsoid": E.label,
            "density": density.value,
            "density_ratio_interval": [ratio_lo, ratio_hi],
            "rows": [r.model_dump() for r in rows],
        }
    )
    for r in rows:
        outcome.check(r.ok, f"alpha={r.alpha:g}: deviation W {r.deviation_w:.3e} / V {r.deviation_v:.3e} over tolerance {r.tolerance:g} or density ratio {r.density_ratio_w:.6g} outside [{ratio_lo:.6g}, {ratio_hi:.6g}]")
    return outcome
