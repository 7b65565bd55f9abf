"""
Source (W) and target (V) boundary patches near the circle {z1 = 0}.

A patch is a closed box in the chart: a band of u = r1^(2 m1) values
proportional to alpha, a theta1 interval of width pi/12 and a theta2 interval
[alpha, 2 alpha] on the V side or [-2 alpha, -alpha] on the W side.
"""

from __future__ import annotations

import math
from enum import Enum
from itertools import combinations

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, model_validator

from domains.errors import PatchError
from domains.geometry.ellipsoid import Density, Ellipsoid, ParamPoint
from domains.geometry.quadrature import ParamBox, QuadratureGrid, axis_rule, integrate_boundary

THETA1_WIDTH = math.pi / 12.0
MIN_ALPHA = 1e-150
_RATIO_TOL = 1e-12


class PatchKind(str, Enum):
    SOURCE = "W"
    TARGET = "V"


class GammaConfig(BaseModel):
    """Band coefficients: W band [g1, g2] * alpha, V band [g3, g4] * alpha."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    g1: float = Field(gt=0)
    g2: float = Field(gt=0)
    g3: float = Field(gt=0)
    g4: float = Field(gt=0)

    @model_validator(mode="after")
    def check_structure(self) -> GammaConfig:
        if not self.g1 < self.g2:
            raise ValueError(f"gamma constraint g1 < g2 violated ({self.g1} >= {self.g2})")
        if not self.g3 < self.g4:
            raise ValueError(f"gamma constraint g3 < g4 violated ({self.g3} >= {self.g4})")
        if abs(self.g4 - self.g1 / 2.0) > _RATIO_TOL * self.g1:
            raise ValueError("gamma constraint g4 = g1/2 violated")
        if abs(self.g3 - self.g1 / 4.0) > _RATIO_TOL * self.g1:
            raise ValueError("gamma constraint g3 = g1/4 violated")
        return self

    def margins(self, E: Ellipsoid) -> dict[str, float]:
        """Bound / value for every ellipsoid-dependent constraint; > 1 means satisfied."""
        return {
            "g2/g1 < 1.5*m1": 1.5 * E.m1 / (self.g2 / self.g1),
            "(2+m1)*pi*g2/(2*m2) < 1/sqrt(3)": (1.0 / math.sqrt(3.0))
            / ((2.0 + E.m1) * math.pi * self.g2 / (2.0 * E.m2)),
            "2*(m1+1)*g2 < m2/pi": (E.m2 / math.pi) / (2.0 * (E.m1 + 1.0) * self.g2),
        }

    def check_against(self, E: Ellipsoid) -> None:
        """Raise PatchError naming the first violated argument-control constraint."""
        for name, margin in self.margins(E).items():
            if not margin > 1.0:
                raise PatchError(f"gamma constraint {name} violated for {E.label} (margin {margin:.4g})")

    def inflated(self, factor: float) -> GammaConfig:
        """Scale g2 by factor, keeping the V band; used to show the constraints matter."""
        return GammaConfig(g1=self.g1, g2=self.g2 * factor, g3=self.g3, g4=self.g4)


def choose_gammas(E: Ellipsoid, safety: float = 0.9) -> GammaConfig:
    """
    Pick band coefficients at a fraction of the argument-control limits.

    Args:
        E: Ellipsoid
        safety: Fraction in (0, 1) of the constraint boundary to use

    Returns:
        GammaConfig satisfying every constraint of check_against
    """
    if not 0.0 < safety < 1.0:
        raise PatchError(f"safety must lie in (0, 1), got {safety}")

    g2 = safety * min(
        E.m2 / (2.0 * math.pi * (E.m1 + 1.0)),
        2.0 * E.m2 / ((2.0 + E.m1) * math.sqrt(3.0) * math.pi),
    )
    ratio = min(1.2, 1.5 * E.m1 * safety)
    if ratio <= 1.0:
        ratio = 1.2
    g1 = g2 / ratio
    return GammaConfig(g1=g1, g2=g2, g3=g1 / 4.0, g4=g1 / 2.0)


class PatchSpec(BaseModel):
    """A closed parameter box; band bounds are on u = r1^(2 m1)."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: PatchKind
    alpha: float = Field(gt=0)
    band_lo: float = Field(ge=0)
    band_hi: float
    t1_lo: float
    t1_hi: float
    t2_lo: float
    t2_hi: float

    @model_validator(mode="after")
    def check_box(self) -> PatchSpec:
        if not self.band_lo <= self.band_hi < 1.0:
            raise ValueError(f"patch band [{self.band_lo}, {self.band_hi}] must satisfy lo <= hi < 1")
        if not (self.t1_lo <= self.t1_hi and self.t2_lo <= self.t2_hi):
            raise ValueError("patch angle intervals must be ordered")
        return self

    def box(self, E: Ellipsoid) -> ParamBox:
        inv = 1.0 / (2.0 * E.m1)
        return ParamBox(
            self.band_lo**inv, self.band_hi**inv, self.t1_lo, self.t1_hi, self.t2_lo, self.t2_hi
        )

    def center(self, E: Ellipsoid) -> ParamPoint:
        b = self.box(E)
        return ParamPoint(
            0.5 * (b.r_lo + b.r_hi), 0.5 * (self.t1_lo + self.t1_hi), 0.5 * (self.t2_lo + self.t2_hi)
        )

    def as_record(self) -> dict[str, str]:
        """Flat record with every real rendered at 17 significant digits."""
        record = {"kind": self.kind.value}
        for key in ("alpha", "band_lo", "band_hi", "t1_lo", "t1_hi", "t2_lo", "t2_hi"):
            record[key] = format(getattr(self, key), ".17g")
        return record


def make_patch(kind: PatchKind, alpha: float, cfg: GammaConfig) -> PatchSpec:
    """
    Build the W or V patch at scale alpha.

    Raises:
        PatchError: alpha not finite, below MIN_ALPHA, or band_hi >= 1
    """
    if not math.isfinite(alpha) or alpha < MIN_ALPHA:
        raise PatchError(f"patch scale alpha={alpha!r} must be finite and >= {MIN_ALPHA:g}")
    if cfg.g2 * alpha >= 1.0:
        raise PatchError(f"patch band leaves the chart: g2*alpha = {cfg.g2 * alpha:.6g} >= 1")

    if kind is PatchKind.SOURCE:
        return PatchSpec(
            kind=kind, alpha=alpha, band_lo=cfg.g1 * alpha, band_hi=cfg.g2 * alpha,
            t1_lo=-THETA1_WIDTH, t1_hi=0.0, t2_lo=-2.0 * alpha, t2_hi=-alpha,
        )
    return PatchSpec(
        kind=kind, alpha=alpha, band_lo=cfg.g3 * alpha, band_hi=cfg.g4 * alpha,
        t1_lo=0.0, t1_hi=THETA1_WIDTH, t2_lo=alpha, t2_hi=2.0 * alpha,
    )


def patch_measure(P: PatchSpec, grid: QuadratureGrid, density: Density, E: Ellipsoid) -> float:
    """Surface measure of the patch under the chosen density."""
    if P.band_lo == P.band_hi:
        return 0.0
    return integrate_boundary(lambda _: 1.0, P.box(E), grid, density, E).real


def analytic_measure_coefficient(P: PatchSpec, E: Ellipsoid, density: Density = Density.LERAY) -> float:
    """
    Limit of patch_measure / alpha^2 as alpha -> 0.

    For the Leray density this is exact at every alpha: pi m1 m2 (band width / alpha) / 24.
    The sigma density is m2 r1^(2 m1 - 1) at leading order, one factor m1 smaller.
    """
    width = (P.band_hi - P.band_lo) / P.alpha
    coefficient = math.pi * E.m1 * E.m2 * width / 24.0
    return coefficient if density is Density.LERAY else coefficient / E.m1


def disjointness_check(patches: list[PatchSpec]) -> bool:
    """True iff the theta2 intervals overlap in at most an endpoint pairwise."""
    for a, b in combinations(patches, 2):
        if min(a.t2_hi, b.t2_hi) > max(a.t2_lo, b.t2_lo):
            logger.debug(f"theta2 overlap between {a.kind.value}@{a.alpha:.3g} and {b.kind.value}@{b.alpha:.3g}")
            return False
    return True


def sample_points(P: PatchSpec, n: int, rng: np.random.Generator, E: Ellipsoid) -> ParamPoint:
    """n points drawn uniformly from the patch's parameter box."""
    b = P.box(E)
    return ParamPoint(
        r1=rng.uniform(b.r_lo, b.r_hi, n),
        theta1=rng.uniform(b.t1_lo, b.t1_hi, n),
        theta2=rng.uniform(b.t2_lo, b.t2_hi, n),
    )


def evaluation_grid(P: PatchSpec, n: int, E: Ellipsoid) -> ParamPoint:
    """n x n x n interior Gauss-Legendre evaluation points of the patch."""
    b = P.box(E)
    r, _ = axis_rule(b.r_lo, b.r_hi, n)
    t1, _ = axis_rule(b.t1_lo, b.t1_hi, n)
    t2, _ = axis_rule(b.t2_lo, b.t2_hi, n)
    R, T1, T2 = np.meshgrid(r, t1, t2, indexing="ij")
    return ParamPoint(r1=R.ravel(), theta1=T1.ravel(), theta2=T2.ravel())
