"""
Truncation experiments on h^(N) = sum_{k<=N} lambda_k chi_{W_k}.

For each N the modular and norm of h^(N) are computed together with a
certified lower bound for K h^(N): on V_k, |H| >= -Re H >= c_k, so the patch
sum with weights c_k on V_k is dominated by |H| and its modular and norm
bound those of H from below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from loguru import logger

from domains.counterexample.image import ImageTable
from domains.counterexample.schedule import (
    DEFAULT_LN_BUDGET,
    AlphaSchedule,
    constant_lambda_of,
    lambda_of,
    select_alphas,
)
from domains.errors import ScheduleError
from domains.geometry.ellipsoid import Density, Ellipsoid
from domains.geometry.quadrature import QuadratureGrid
from domains.patches.patches import GammaConfig, patch_measure
from domains.varexp.exponent import ExponentField
from domains.varexp.logscalar import LogScalar
from domains.varexp.luxemburg import DEFAULT_TOL, PatchSum, luxemburg_norm, modular


@dataclass(frozen=True)
class ExperimentSetup:
    """Everything the truncation experiments need besides N_max."""

    E: Ellipsoid
    gammas: GammaConfig
    field: ExponentField
    patch_grid: QuadratureGrid
    v_points: int = 5
    ln_budget: float = DEFAULT_LN_BUDGET
    tol: float = DEFAULT_TOL


@dataclass(frozen=True)
class BlowupRow:
    N: int
    modular_h: LogScalar
    norm_h: LogScalar
    modular_H_lower: LogScalar
    modular_H_terms: tuple[LogScalar, ...]
    norm_H_lower: LogScalar
    min_ReH_on_Vk: float
    cross_positivity_ok: bool
    tail_bound: float


@dataclass(frozen=True)
class ControlRow:
    N: int
    norm_h: LogScalar
    norm_H_lower: LogScalar

    @property
    def ratio(self) -> float:
        if self.norm_h.is_zero or self.norm_H_lower.is_zero:
            return 0.0
        return (self.norm_H_lower / self.norm_h).to_float()


@dataclass(frozen=True)
class _Truncation:
    h: PatchSum
    lower: PatchSum
    min_scaled: float
    cross_ok: bool


def _truncate(table: ImageTable, ln_lambdas: list[float], N: int) -> _Truncation:
    """h^(N) and the certified lower patch sum on V_1..V_N."""
    weights = ln_lambdas[:N]
    h = PatchSum.of([(LogScalar.exp_of(ln), table.sources[j]) for j, ln in enumerate(weights)])

    lower_terms = []
    min_scaled = math.inf
    for k in range(N):
        c_k = table.image_on(k, weights).min_neg_real()
        # -Re H / lambda_k, comparable with the single-scale image constant
        scaled = 0.0 if c_k.is_zero else c_k.sign * math.exp(c_k.ln_mag - weights[k])
        min_scaled = min(min_scaled, scaled)
        if c_k.sign > 0:
            lower_terms.append((c_k, table.targets[k]))

    return _Truncation(
        h=h,
        lower=PatchSum.of(lower_terms),
        min_scaled=min_scaled,
        cross_ok=table.cross_positive(N) and len(lower_terms) == N,
    )


def certified_tail_bound(table: ImageTable, N: int, grid: QuadratureGrid) -> float:
    """sum_{k<=N} 4^(-k) S(W_k) / alpha_k^2, an upper bound for modular(h^(N))."""
    total = 0.0
    for k in range(1, N + 1):
        W = table.sources[k - 1]
        measure = patch_measure(W, grid, Density.LERAY, table.E)
        total += 4.0**-k * measure / W.alpha**2
    return total


def blowup_experiment(
    N_max: int, setup: ExperimentSetup, table: ImageTable | None = None
) -> list[BlowupRow]:
    """
    Rows N = 1..N_max of the variable-exponent truncation experiment.

    Args:
        N_max: Largest truncation (>= 2)
        setup: Ellipsoid, bands, exponent field and grids
        table: Precomputed patch images to reuse; built when omitted

    Returns:
        Rows sorted by N

    Raises:
        ScheduleError: N_max < 2 or the schedule exceeds its budget
    """
    if N_max < 2:
        raise ScheduleError(f"blow-up experiment needs N_max >= 2, got {N_max}")

    if table is None:
        schedule = select_alphas(N_max, setup.field, setup.ln_budget)
        table = ImageTable(schedule, setup.gammas, setup.patch_grid, setup.v_points, setup.E)
    ln_lambdas = [lambda_of(k, table.schedule).ln_mag for k in range(1, N_max + 1)]

    rows = []
    for N in range(1, N_max + 1):
        t = _truncate(table, ln_lambdas, N)
        one = LogScalar.one()
        # V_k contributions to M(N), k = 1..N
        terms = tuple(
            modular(PatchSum.of([term]), one, setup.field, setup.patch_grid, setup.E) for term in t.lower.terms
        )
        row = BlowupRow(
            N=N,
            modular_h=modular(t.h, one, setup.field, setup.patch_grid, setup.E),
            norm_h=luxemburg_norm(t.h, setup.field, setup.patch_grid, setup.tol, setup.E),
            modular_H_lower=LogScalar.sum(terms),
            modular_H_terms=terms,
            norm_H_lower=luxemburg_norm(t.lower, setup.field, setup.patch_grid, setup.tol, setup.E),
            min_ReH_on_Vk=t.min_scaled,
            cross_positivity_ok=t.cross_ok,
            tail_bound=certified_tail_bound(table, N, setup.patch_grid),
        )
        logger.info(
            f"N={N}: ln modular(h)={row.modular_h.ln_mag:.6g} ln norm(h)={row.norm_h.ln_mag:.6g} "
            f"ln M(N)={row.modular_H_lower.ln_mag:.6g} cross_ok={row.cross_positivity_ok}"
        )
        rows.append(row)
    return rows


def positive_control(
    N_max: int, p_const: float, setup: ExperimentSetup, table: ImageTable | None = None
) -> list[ControlRow]:
    """
    The same pipeline with the constant exponent p_const and lambda_k = alpha_k^(-2/p_const).

    The scales are those of the variable-exponent schedule.
    """
    if not p_const > 1.0:
        raise ValueError(f"control exponent must exceed 1, got {p_const}")
    if table is None:
        schedule = select_alphas(N_max, setup.field, setup.ln_budget)
        table = ImageTable(schedule, setup.gammas, setup.patch_grid, setup.v_points, setup.E)

    field = ExponentField.constant(p_const)
    ln_lambdas = [constant_lambda_of(k, table.schedule, p_const).ln_mag for k in range(1, N_max + 1)]

    rows = []
    for N in range(1, N_max + 1):
        t = _truncate(table, ln_lambdas, N)
        row = ControlRow(
            N=N,
            norm_h=luxemburg_norm(t.h, field, setup.patch_grid, setup.tol, setup.E),
            norm_H_lower=luxemburg_norm(t.lower, field, setup.patch_grid, setup.tol, setup.E),
        )
        logger.info(f"control N={N}: ratio={row.ratio:.6g}")
        rows.append(row)
    return rows


def schedule_for(setup: ExperimentSetup, N_max: int) -> AlphaSchedule:
    return select_alphas(N_max, setup.field, setup.ln_budget)
