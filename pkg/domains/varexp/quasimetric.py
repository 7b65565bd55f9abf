"""The boundary quasimetric and log-Hoelder diagnostics of exponent fields."""

from __future__ import annotations

import math

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel

from domains.errors import GeometryError
from domains.geometry.ellipsoid import BoundaryPoint, Ellipsoid, ParamPoint, lift
from domains.kernel.clf import w_boundary, w_interior
from domains.varexp.exponent import ExponentField, exponent_eval


def quasimetric(xi: BoundaryPoint, z: BoundaryPoint, E: Ellipsoid) -> npt.NDArray[np.float64] | float:
    """d(xi, z) = |w(xi, z)| + |w(z, xi)|; symmetric by construction."""
    d = np.abs(w_boundary(xi.param, z.param, E)) + np.abs(w_boundary(z.param, xi.param, E))
    return float(d) if np.ndim(d) == 0 else d


def direct_quasimetric(xi: BoundaryPoint, z: BoundaryPoint, E: Ellipsoid) -> npt.NDArray[np.float64] | float:
    """d from the C^2 formula for w on the lifted points; loses accuracy for close pairs."""
    d = np.abs(w_interior(xi, z.pair(), E)) + np.abs(w_interior(z, xi.pair(), E))
    return float(d) if np.ndim(d) == 0 else d


def euclidean_distance(xi: BoundaryPoint, z: BoundaryPoint) -> npt.NDArray[np.float64] | float:
    d = np.sqrt(np.abs(xi.z1 - z.z1) ** 2 + np.abs(xi.z2 - z.z2) ** 2)
    return float(d) if np.ndim(d) == 0 else d


class QuasimetricComparison(BaseModel):
    """Sampled constants of |xi - z|^(2 delta) <~ d(xi, z) <~ |xi - z|."""

    delta: float
    lower_constant: float
    upper_constant: float
    max_formula_gap: float
    sample_count: int


def sample_boundary_pairs(
    n: int, rng: np.random.Generator, E: Ellipsoid
) -> tuple[BoundaryPoint, BoundaryPoint]:
    """n independent uniform pairs over the full chart."""

    def draw() -> BoundaryPoint:
        return lift(
            ParamPoint(
                r1=rng.uniform(0.0, 1.0, n),
                theta1=rng.uniform(-math.pi, math.pi, n),
                theta2=rng.uniform(-math.pi, math.pi, n),
            ),
            E,
        )

    return draw(), draw()


def quasimetric_comparison(xi: BoundaryPoint, z: BoundaryPoint, E: Ellipsoid) -> QuasimetricComparison:
    """
    Two-sided comparison of d with the Euclidean distance over sampled pairs.

    lower_constant = min d / |xi - z|^(2 delta) and upper_constant = max d / |xi - z|,
    with delta = max(m1, m2). max_formula_gap is the largest |d - d_direct| against
    direct_quasimetric. Coincident pairs are dropped.
    """
    d = np.atleast_1d(quasimetric(xi, z, E))
    d_direct = np.atleast_1d(direct_quasimetric(xi, z, E))
    dist = np.atleast_1d(euclidean_distance(xi, z))
    keep = dist > 0.0
    if not np.any(keep):
        raise GeometryError("quasimetric comparison needs at least one pair of distinct points")

    d, d_direct, dist = d[keep], d_direct[keep], dist[keep]
    return QuasimetricComparison(
        delta=E.delta,
        lower_constant=float(np.min(d / dist ** (2.0 * E.delta))),
        upper_constant=float(np.max(d / dist)),
        max_formula_gap=float(np.max(np.abs(d - d_direct))),
        sample_count=int(d.size),
    )


def straddling_pairs(alpha: float, E: Ellipsoid, r1: float = 0.0) -> tuple[BoundaryPoint, BoundaryPoint]:
    """The pair (r1, 0, alpha), (r1, 0, -alpha) on either side of theta2 = 0."""
    xi = lift(ParamPoint(r1, 0.0, alpha), E)
    z = lift(ParamPoint(r1, 0.0, -alpha), E)
    return xi, z


def log_holder_modulus(pairs: list[tuple[BoundaryPoint, BoundaryPoint]], F: ExponentField) -> float:
    """
    max over pairs of |p(xi) - p(z)| * |ln |xi - z||.

    Raises:
        GeometryError: a pair coincides or lies at distance >= 1
    """
    modulus = 0.0
    for xi, z in pairs:
        dist = np.atleast_1d(euclidean_distance(xi, z))
        if np.any(dist <= 0.0) or np.any(dist >= 1.0):
            raise GeometryError("log-Hoelder pairs must be distinct with |xi - z| < 1")
        dp = np.abs(np.atleast_1d(exponent_eval(xi, F)) - np.atleast_1d(exponent_eval(z, F)))
        modulus = max(modulus, float(np.max(dp * np.abs(np.log(dist)))))
    return modulus
