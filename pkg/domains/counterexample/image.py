"""
The test function h = sum_k lambda_k chi_{W_k} and its image H = K h.

lambda_k overflows floats, so images are returned as a ScaledComplex:
H = e^scale * mantissa with |mantissa| of moderate size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from loguru import logger

from domains.counterexample.schedule import AlphaSchedule, lambda_of
from domains.geometry.ellipsoid import Ellipsoid, ParamPoint
from domains.geometry.quadrature import QuadratureGrid
from domains.kernel.clf import patch_image
from domains.patches.patches import GammaConfig, PatchKind, PatchSpec, evaluation_grid, make_patch
from domains.varexp.logscalar import LogScalar
from domains.varexp.luxemburg import PatchSum


@dataclass(frozen=True)
class ScaledComplex:
    """e^scale * mantissa; a zero value has scale -inf and zero mantissa."""

    scale: float
    mantissa: complex | npt.NDArray[np.complex128]

    @classmethod
    def zero(cls, shape: tuple[int, ...] = ()) -> ScaledComplex:
        return cls(-math.inf, np.zeros(shape, dtype=complex) if shape else 0j)

    def neg_real(self) -> npt.NDArray[np.float64]:
        """-Re of the mantissa."""
        return -np.real(self.mantissa)

    def min_neg_real(self) -> LogScalar:
        """min of -Re H as a LogScalar."""
        low = float(np.min(self.neg_real()))
        if low == 0.0 or self.scale == -math.inf:
            return LogScalar.zero()
        return LogScalar(1 if low > 0 else -1, self.scale + math.log(abs(low)))


def build_h(S: AlphaSchedule, cfg: GammaConfig) -> PatchSum:
    """
    Truncated test function with terms (lambda_k, W_{alpha_k}).

    Raises:
        PatchError: some alpha_k is below the smallest patch scale
    """
    terms = [
        (lambda_of(k, S), make_patch(PatchKind.SOURCE, math.exp(S.ln_alphas[k - 1]), cfg))
        for k in range(1, len(S) + 1)
    ]
    return PatchSum.of(terms)


def combine_images(
    ln_weights: list[float], images: list[npt.NDArray[np.complex128]]
) -> ScaledComplex:
    """sum_j e^(ln_weights[j]) * images[j], factoring out the largest weight."""
    if not images:
        return ScaledComplex.zero()
    scale = max(ln_weights)
    mantissa = np.zeros_like(images[0])
    for ln_w, image in zip(ln_weights, images, strict=True):
        mantissa = mantissa + math.exp(ln_w - scale) * image
    return ScaledComplex(scale, mantissa)


def eval_H(h: PatchSum, z: ParamPoint, grid: QuadratureGrid, E: Ellipsoid) -> ScaledComplex:
    """
    H(z) = sum_k lambda_k K chi_{W_k}(z) for boundary targets outside every W_k.

    Raises:
        NearSingularKernelError: a target is too close to some patch
    """
    if h.is_zero:
        return ScaledComplex.zero((len(z),) if np.ndim(z.r1) else ())
    images = [patch_image(patch, z, grid, E) for _, patch in h.terms]
    return combine_images([weight.ln_mag for weight, _ in h.terms], images)


class ImageTable:
    """
    K chi_{W_j} evaluated on the V_k evaluation grid for every pair (j, k).

    Independent of the weights, so the counterexample and the constant-exponent
    control share one table.
    """

    def __init__(
        self,
        schedule: AlphaSchedule,
        gammas: GammaConfig,
        grid: QuadratureGrid,
        v_points: int,
        E: Ellipsoid,
    ):
        self.schedule = schedule
        self.E = E
        n = len(schedule)
        alphas = [math.exp(ln) for ln in schedule.ln_alphas]
        self.sources: list[PatchSpec] = [make_patch(PatchKind.SOURCE, a, gammas) for a in alphas]
        self.targets: list[PatchSpec] = [make_patch(PatchKind.TARGET, a, gammas) for a in alphas]
        self.target_points: list[ParamPoint] = [evaluation_grid(V, v_points, E) for V in self.targets]

        self.images: list[list[npt.NDArray[np.complex128]]] = [
            [patch_image(self.sources[j], self.target_points[k], grid, E) for k in range(n)]
            for j in range(n)
        ]
        logger.info(f"computed {n}x{n} patch images on {v_points}^3 target grids ({grid.size} nodes per patch)")

    def __len__(self) -> int:
        return len(self.sources)

    def image_on(self, k: int, ln_weights: list[float]) -> ScaledComplex:
        """H on the V_k grid (0-based k) for weights on W_0..W_{len(ln_weights)-1}."""
        return combine_images(ln_weights, [self.images[j][k] for j in range(len(ln_weights))])

    def cross_positive(self, N: int) -> bool:
        """-Re K chi_{W_j} > 0 on V_k for all j != k below N."""
        return all(
            bool(np.all(-np.real(self.images[j][k]) > 0.0))
            for j in range(N)
            for k in range(N)
            if j != k
        )
