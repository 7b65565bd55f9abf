"""
Sampled extremes of the kernel over W x V patch pairs.

For xi in W and z in V the scaled quantity -Re(1/w^2) * alpha^2 must stay
bounded below by a positive constant; across scales only its sign is claimed.
"""

from __future__ import annotations

import math

import numpy as np
import numpy.typing as npt
from loguru import logger
from pydantic import BaseModel, Field

from domains.geometry.ellipsoid import Ellipsoid, ParamPoint
from domains.kernel.clf import w_boundary
from domains.patches.patches import PatchSpec, sample_points

REFINE_ROUNDS = 3
REFINE_FRACTION = 0.1
WINDOW = (-math.pi / 2.0, -math.pi / 3.0)
LITERAL_WINDOW = (-math.pi / 2.0, -2.0 * math.pi / 3.0)


class KernelBoundReport(BaseModel):
    """Extremes of the kernel over sampled (xi, z) pairs."""

    alpha_w: float
    alpha_v: float
    alpha_scale: float
    min_neg_re_scaled: float
    min_abs_w_over_alpha: float
    max_abs_w_over_alpha: float
    min_neg_im_over_alpha: float
    arg_min: float
    arg_max: float
    sample_count: int = Field(gt=0)
    all_positive: bool
    window_ok: bool
    literal_window_ok: bool = False


class _Extremes:
    """Running extremes plus the parameter coordinates of the worst pair."""

    def __init__(self, scale: float):
        self.scale = scale
        self.count = 0
        self.min_neg_re = math.inf
        self.min_abs = math.inf
        self.max_abs = 0.0
        self.min_neg_im = math.inf
        self.arg_min = math.inf
        self.arg_max = -math.inf
        self.all_positive = True
        self.worst: tuple[tuple[float, float, float], tuple[float, float, float]] | None = None

    def update(self, xi: ParamPoint, z: ParamPoint, w: npt.NDArray[np.complex128]) -> None:
        neg_re = -np.real(1.0 / w**2) * self.scale**2
        mag = np.abs(w) / self.scale
        arg = np.angle(w)

        self.count += int(w.size)
        self.all_positive &= bool(np.all(neg_re > 0.0))
        self.min_abs = min(self.min_abs, float(mag.min()))
        self.max_abs = max(self.max_abs, float(mag.max()))
        self.min_neg_im = min(self.min_neg_im, float((-np.imag(w) / self.scale).min()))
        self.arg_min = min(self.arg_min, float(arg.min()))
        self.arg_max = max(self.arg_max, float(arg.max()))

        i = int(np.argmin(neg_re))
        if neg_re[i] < self.min_neg_re:
            self.min_neg_re = float(neg_re[i])
            self.worst = (
                (float(np.ravel(xi.r1)[i]), float(np.ravel(xi.theta1)[i]), float(np.ravel(xi.theta2)[i])),
                (float(np.ravel(z.r1)[i]), float(np.ravel(z.theta1)[i]), float(np.ravel(z.theta2)[i])),
            )


def _around(
    center: tuple[float, float, float], P: PatchSpec, E: Ellipsoid, shrink: float, n: int, rng: np.random.Generator
) -> ParamPoint:
    """Uniform samples in a shrunken box around center, clipped to the patch."""
    b = P.box(E)
    lows = (b.r_lo, b.t1_lo, b.t2_lo)
    highs = (b.r_hi, b.t1_hi, b.t2_hi)
    coords = []
    for c, lo, hi in zip(center, lows, highs, strict=True):
        half = 0.25 * (hi - lo) * shrink
        coords.append(rng.uniform(max(lo, c - half), min(hi, c + half), n))
    return ParamPoint(*coords)


def kernel_bound_scan(
    W: PatchSpec,
    V: PatchSpec,
    n_samples: int,
    seed: int,
    E: Ellipsoid,
    *,
    refine_rounds: int = REFINE_ROUNDS,
) -> KernelBoundReport:
    """
    Seeded uniform sampling of W x V, followed by local refinement at the worst pair.

    Args:
        W: Source patch
        V: Target patch, same or different alpha
        n_samples: Uniform pairs; 1 evaluates only the two patch centers
        seed: Generator seed
        E: Ellipsoid

    Returns:
        KernelBoundReport scaled by alpha_s = (alpha_W + alpha_V) / 2
    """
    scale = 0.5 * (W.alpha + V.alpha)
    stats = _Extremes(scale)
    rng = np.random.default_rng(seed)

    if n_samples <= 1:
        xi, z = W.center(E), V.center(E)
        xi = ParamPoint(np.atleast_1d(xi.r1), np.atleast_1d(xi.theta1), np.atleast_1d(xi.theta2))
        z = ParamPoint(np.atleast_1d(z.r1), np.atleast_1d(z.theta1), np.atleast_1d(z.theta2))
        stats.update(xi, z, np.asarray(w_boundary(xi, z, E)))
        refine_rounds = 0
    else:
        xi = sample_points(W, n_samples, rng, E)
        z = sample_points(V, n_samples, rng, E)
        stats.update(xi, z, np.asarray(w_boundary(xi, z, E)))

    n_refine = max(1, int(n_samples * REFINE_FRACTION / max(refine_rounds, 1)))
    for round_ in range(refine_rounds):
        worst_xi, worst_z = stats.worst
        shrink = 0.5**round_
        xi = _around(worst_xi, W, E, shrink, n_refine, rng)
        z = _around(worst_z, V, E, shrink, n_refine, rng)
        stats.update(xi, z, np.asarray(w_boundary(xi, z, E)))

    report = KernelBoundReport(
        alpha_w=W.alpha,
        alpha_v=V.alpha,
        alpha_scale=scale,
        min_neg_re_scaled=stats.min_neg_re,
        min_abs_w_over_alpha=stats.min_abs,
        max_abs_w_over_alpha=stats.max_abs,
        min_neg_im_over_alpha=stats.min_neg_im,
        arg_min=stats.arg_min,
        arg_max=stats.arg_max,
        sample_count=stats.count,
        all_positive=stats.all_positive,
        window_ok=WINDOW[0] < stats.arg_min and stats.arg_max < WINDOW[1],
        # (-pi/2, -2pi/3) is empty, so this never holds
        literal_window_ok=LITERAL_WINDOW[0] < stats.arg_min and stats.arg_max < LITERAL_WINDOW[1],
    )
    logger.debug(
        f"kernel scan W@{W.alpha:.3g} V@{V.alpha:.3g}: min -Re(1/w^2)a^2={report.min_neg_re_scaled:.4g} "
        f"|w|/a in [{report.min_abs_w_over_alpha:.4g}, {report.max_abs_w_over_alpha:.4g}] n={report.sample_count}"
    )
    return report
