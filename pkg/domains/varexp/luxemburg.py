"""
Modulars and Luxemburg norms of weighted sums of patch indicators.

For f = sum_k c_k chi_{P_k} on disjoint patches,

    modular(f, lambda) = sum_k integral over P_k of (c_k / lambda)^p(xi) dS,

evaluated node by node as exp(p * (ln c_k - ln lambda) + ln dS) and reduced
with log-sum-exp, so weights far outside the float range are handled exactly.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from loguru import logger

from domains.errors import PatchError
from domains.geometry.ellipsoid import Density, Ellipsoid
from domains.geometry.quadrature import QuadratureGrid, boundary_nodes
from domains.patches.patches import PatchSpec, disjointness_check
from domains.varexp.bisection import bisect_decreasing, expand_bracket
from domains.varexp.exponent import ExponentField, exponent_eval
from domains.varexp.logscalar import LogScalar, log_sum

BRACKET_PAD = 50.0
DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class PatchSum:
    """Finite sum of positive weights times indicators of pairwise disjoint patches."""

    terms: tuple[tuple[LogScalar, PatchSpec], ...]

    def __post_init__(self) -> None:
        for weight, patch in self.terms:
            if weight.sign <= 0:
                raise PatchError(f"PatchSum weight for {patch.kind.value}@{patch.alpha:.3g} must be positive")
        if not disjointness_check([patch for _, patch in self.terms]):
            raise PatchError("PatchSum patches must be pairwise disjoint")

    @classmethod
    def of(cls, terms: Sequence[tuple[LogScalar, PatchSpec]]) -> PatchSum:
        return cls(tuple(terms))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def scaled(self, t: LogScalar) -> PatchSum:
        return PatchSum(tuple((weight * t, patch) for weight, patch in self.terms))


class ModularIntegrand:
    """Precomputed ln weights, exponents and ln dS for repeated modular evaluations."""

    def __init__(self, f: PatchSum, F: ExponentField, grid: QuadratureGrid, E: Ellipsoid, density: Density):
        ln_w: list[npt.NDArray[np.float64]] = []
        p: list[npt.NDArray[np.float64]] = []
        ln_ds: list[npt.NDArray[np.float64]] = []
        for weight, patch in f.terms:
            nodes = boundary_nodes(patch.box(E), grid, density, E)
            positive = nodes.weights > 0.0
            ln_ds.append(np.log(nodes.weights[positive]))
            p.append(np.asarray(exponent_eval(nodes.points(E), F), dtype=float)[positive])
            ln_w.append(np.full(int(positive.sum()), weight.ln_mag))

        self.ln_w = np.concatenate(ln_w) if ln_w else np.empty(0)
        self.p = np.concatenate(p) if p else np.empty(0)
        self.ln_ds = np.concatenate(ln_ds) if ln_ds else np.empty(0)

    @property
    def is_empty(self) -> bool:
        return self.ln_w.size == 0

    def ln_modular(self, ln_lambda: float) -> float:
        return log_sum(self.p * (self.ln_w - ln_lambda) + self.ln_ds)


def modular(
    f: PatchSum,
    lam: LogScalar,
    F: ExponentField,
    grid: QuadratureGrid,
    E: Ellipsoid,
    density: Density = Density.LERAY,
) -> LogScalar:
    """
    integral of |f / lambda|^p(xi) dS in log-domain.

    Raises:
        ValueError: lambda is not positive
    """
    if lam.sign <= 0:
        raise ValueError("modular requires lambda > 0")
    if f.is_zero:
        return LogScalar.zero()
    return LogScalar.exp_of(ModularIntegrand(f, F, grid, E, density).ln_modular(lam.ln_mag))


def luxemburg_norm(
    f: PatchSum,
    F: ExponentField,
    grid: QuadratureGrid,
    tol: float,
    E: Ellipsoid,
    density: Density = Density.LERAY,
) -> LogScalar:
    """
    inf{lambda > 0 : modular(f, lambda) <= 1} by bisection on ln lambda.

    Args:
        f: Patch sum
        F: Exponent field
        grid: Quadrature grid used on every patch
        tol: Stop once |ln modular| <= tol at the upper bracket end
        E: Ellipsoid
        density: Measure dS

    Returns:
        The norm, or zero when f = 0

    Raises:
        BracketError: the modular is non-finite at the upper bracket
    """
    if f.is_zero:
        return LogScalar.zero()

    integrand = ModularIntegrand(f, F, grid, E, density)
    ln_weights = [weight.ln_mag for weight, _ in f.terms]
    lo = min(ln_weights) - BRACKET_PAD
    hi = max(ln_weights) + BRACKET_PAD

    lo, hi = expand_bracket(integrand.ln_modular, lo, hi, step=BRACKET_PAD)
    # |ln m| <= tol implies |m - 1| <= tol (1 + tol)
    ln_norm = bisect_decreasing(integrand.ln_modular, lo, hi, y_tol=tol)

    logger.debug(f"luxemburg norm of {len(f)} term(s): ln = {ln_norm:.17g}")
    return LogScalar.exp_of(ln_norm)
