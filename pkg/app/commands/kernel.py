"""verify-kernel: pointwise kernel bounds on W x V and the single-scale images."""

import math
from itertools import permutations

import numpy as np
from loguru import logger

from app.commands.common import CommandContext, Outcome
from app.models.schemas import ImageRow
from app.utils.config import RunConfig
from app.utils.reports import render_table
from domains.counterexample.schedule import select_alphas
from domains.kernel.bounds import KernelBoundReport, kernel_bound_scan
from domains.kernel.clf import patch_image
from domains.patches.patches import PatchKind, evaluation_grid, make_patch


def _variation(values: list[float]) -> float:
    low = min(values)
    return math.inf if low <= 0.0 else max(values) / low


def cmd_verify_kernel(cfg: RunConfig, ctx: CommandContext) -> Outcome:
    E = cfg.build_ellipsoid()
    gammas = cfg.build_gammas()
    section = cfg.kernel
    n = section.n_samples
    outcome = Outcome(metrics={"ellipsoid": E.label, "gammas": gammas.model_dump(), "gamma_margins": gammas.margins(E)})

    # same-scale bounds
    same: list[KernelBoundReport] = []
    for i, alpha in enumerate(section.alphas):
        W = make_patch(PatchKind.SOURCE, alpha, gammas)
        V = make_patch(PatchKind.TARGET, alpha, gammas)
        same.append(kernel_bound_scan(W, V, n, cfg.seed + i, E))

    render_table(
        f"Kernel bounds on W x V ({E.label})",
        ["alpha", "min -Re(1/w^2)a^2", "min |w|/a", "max |w|/a", "min -Im w/a", "arg min", "arg max", "samples"],
        [
            (r.alpha_scale, r.min_neg_re_scaled, r.min_abs_w_over_alpha, r.max_abs_w_over_alpha,
             r.min_neg_im_over_alpha, r.arg_min, r.arg_max, r.sample_count)
            for r in same
        ],
    )

    im_bound = (2.0 * E.m2 / math.pi) * (1.0 - section.im_epsilon)
    for r in same:
        outcome.check(r.all_positive, f"alpha={r.alpha_scale:g}: -Re(1/w^2) not positive on every sample")
        outcome.check(r.window_ok, f"alpha={r.alpha_scale:g}: arg w left (-pi/2, -pi/3): [{r.arg_min:.4f}, {r.arg_max:.4f}]")
        outcome.check(
            r.min_neg_im_over_alpha >= im_bound,
            f"alpha={r.alpha_scale:g}: min -Im w/alpha {r.min_neg_im_over_alpha:.4g} < {im_bound:.4g}",
        )

    if n > 1 and len(same) > 1:
        lower = [r.min_neg_re_scaled for r in same]
        upper = [r.max_abs_w_over_alpha for r in same]
        outcome.check(_variation(lower) <= section.max_variation, f"scaled kernel minimum varies by {_variation(lower):.3g} across alpha")
        outcome.check(_variation(upper) <= section.max_variation, f"|w|/alpha maximum varies by {_variation(upper):.3g} across alpha")

    golden = ctx.fixtures.lookup(E.label, "kernel_min_neg_re_scaled")
    worst_same = min(r.min_neg_re_scaled for r in same)
    if golden is not None and not ctx.calibrate:
        outcome.check(worst_same >= golden, f"min -Re(1/w^2)a^2 = {worst_same:.4g} below golden {golden:.4g}")

    # cross-scale sign
    cross_alphas = section.cross_alphas
    if cross_alphas is None:
        cross_alphas = select_alphas(cfg.blowup.n_max, cfg.build_field(), cfg.blowup.ln_budget).alphas
    cross_failures = []
    for i, j in permutations(range(len(cross_alphas)), 2):
        W = make_patch(PatchKind.SOURCE, cross_alphas[i], gammas)
        V = make_patch(PatchKind.TARGET, cross_alphas[j], gammas)
        report = kernel_bound_scan(W, V, n, cfg.seed + 1000 + i * len(cross_alphas) + j, E)
        if not report.all_positive:
            cross_failures.append((cross_alphas[i], cross_alphas[j]))
    logger.info(f"cross-scale sign checked on {len(cross_alphas) * (len(cross_alphas) - 1)} pairs")
    outcome.check(not cross_failures, f"-Re(1/w^2) changes sign for cross-scale pairs {cross_failures}")

    # necessity of the band constraints
    inflated = gammas.inflated(section.inflate_factor)
    alpha0 = section.alphas[0]
    inflated_report = kernel_bound_scan(
        make_patch(PatchKind.SOURCE, alpha0, inflated), make_patch(PatchKind.TARGET, alpha0, inflated), max(n, 2), cfg.seed, E
    )
    inflated_fails = not (inflated_report.all_positive and inflated_report.window_ok)
    if n > 1:
        outcome.check(inflated_fails, f"g2 inflated x{section.inflate_factor:g} still satisfies the kernel bounds")

    # single-scale images on the V evaluation grid
    images: list[ImageRow] = []
    for alpha in section.alphas:
        W = make_patch(PatchKind.SOURCE, alpha, gammas)
        V = make_patch(PatchKind.TARGET, alpha, gammas)
        neg_re = -np.real(patch_image(W, evaluation_grid(V, cfg.grids.v_eval, E), cfg.grids.patch, E))
        images.append(ImageRow(alpha=alpha, min_neg_re_H=float(neg_re.min()), max_neg_re_H=float(neg_re.max())))

    render_table("Image of chi_W on V", ["alpha", "min -Re H", "max -Re H"], [(r.alpha, r.min_neg_re_H, r.max_neg_re_H) for r in images])
    c_values = [r.min_neg_re_H for r in images]
    outcome.check(min(c_values) > 0.0, "-Re H not positive on some V grid")
    if len(images) > 1:
        outcome.check(_variation(c_values) <= section.max_variation, f"image constant varies by {_variation(c_values):.3g} across alpha")
    golden_c = ctx.fixtures.lookup(E.label, "image_c_H")
    if golden_c is not None and not ctx.calibrate:
        outcome.check(min(c_values) >= golden_c, f"image constant {min(c_values):.4g} below golden {golden_c:.4g}")

    outcome.metrics.update(
        {
            "same_scale": [r.model_dump() for r in same],
            "cross_alphas": list(cross_alphas),
            "cross_failures": cross_failures,
            "inflated": {"factor": section.inflate_factor, "report": inflated_report.model_dump(), "fails": inflated_fails},
            "images": [r.model_dump() for r in images],
        }
    )
    outcome.calibration = {
        "kernel_min_neg_re_scaled": 0.5 * worst_same,
        "image_c_H": 0.5 * min(c_values),
    }
    return outcome
