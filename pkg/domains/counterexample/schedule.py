"""
The scale schedule alpha_k and the weights lambda_k of the test function.

With L = ln(1/alpha) and psi_k = psi(alpha_k) the schedule asks, for every k,

    (1/alpha_k)^(1/(p0 + psi_k) - 1/p0) <= 2^(-k/p0)   <=>   L psi_k >= k ln 2 (p0 + psi_k)

and alpha_{k+1} <= alpha_k / 2. Everything is done on L, never on alpha.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from loguru import logger

from domains.errors import ScheduleError
from domains.varexp.bisection import bisect_decreasing
from domains.varexp.exponent import ExponentField, psi_from_log
from domains.varexp.logscalar import LogScalar

DEFAULT_LN_BUDGET = 1e6
LN2 = math.log(2.0)


@dataclass(frozen=True)
class AlphaSchedule:
    """ln alpha_k for k = 1..N, strictly decreasing, and the field they were chosen for."""

    ln_alphas: tuple[float, ...]
    field: ExponentField

    def __len__(self) -> int:
        return len(self.ln_alphas)

    @property
    def alphas(self) -> list[float]:
        """Native alpha_k; underflows to 0 past ln alpha = -745."""
        return [math.exp(ln) for ln in self.ln_alphas]

    def L(self, k: int) -> float:
        """ln(1/alpha_k), 1-based."""
        return -self.ln_alphas[k - 1]

    def psi(self, k: int) -> float:
        return float(psi_from_log(self.L(k), self.field.psi))

    def p_at_alpha(self, k: int) -> float:
        return self.field.p0 + self.psi(k)

    def scale_margin(self, k: int) -> float:
        """ln LHS - ln RHS of the per-scale inequality; <= 0 when it holds."""
        p0 = self.field.p0
        ln_lhs = self.L(k) * (1.0 / self.p_at_alpha(k) - 1.0 / p0)
        return ln_lhs + k * LN2 / p0

    def violations(self) -> list[str]:
        """Names of every failed schedule invariant; empty when the schedule is valid."""
        problems = []
        for k in range(1, len(self) + 1):
            if self.scale_margin(k) > 1e-12 * max(1.0, self.L(k)):
                problems.append(f"k={k}: per-scale inequality margin {self.scale_margin(k):.3e} > 0")
            if k > 1 and self.L(k) < self.L(k - 1) + LN2 - 1e-12 * self.L(k):
                problems.append(f"k={k}: alpha_k > alpha_(k-1)/2")
        return problems


def _condition(k: int, F: ExponentField):
    def g(L: float) -> float:
        psi = float(psi_from_log(L, F.psi))
        return L * psi - k * LN2 * (F.p0 + psi)

    return g


def _smallest_L(k: int, F: ExponentField, ln_budget: float) -> float:
    """Smallest L with g(L) >= 0: doubling ladder, then bisection."""
    g = _condition(k, F)
    lo, hi = 0.0, 1.0
    while g(hi) < 0.0:
        lo, hi = hi, 2.0 * hi
        if hi > 2.0 * ln_budget:
            raise ScheduleError(
                f"alpha_{k} needs ln(1/alpha) beyond the budget {ln_budget:g}"
                + (" (exponent field has psi = 0)" if F.is_constant else "")
            )
    return bisect_decreasing(lambda L: -g(L), lo, hi, y_tol=0.0)


def select_alphas(N: int, F: ExponentField, ln_budget: float = DEFAULT_LN_BUDGET) -> AlphaSchedule:
    """
    Choose alpha_1 > ... > alpha_N satisfying both schedule invariants.

    Args:
        N: Number of scales (>= 1)
        F: Exponent field supplying psi
        ln_budget: Largest admissible ln(1/alpha_N)

    Returns:
        AlphaSchedule

    Raises:
        ScheduleError: N < 1 or some ln(1/alpha_k) exceeds ln_budget
    """
    if N < 1:
        raise ScheduleError(f"schedule length must be >= 1, got {N}")

    Ls: list[float] = []
    for k in range(1, N + 1):
        L = _smallest_L(k, F, ln_budget)
        if Ls:
            L = max(L, Ls[-1] + LN2)
        if L > ln_budget:
            raise ScheduleError(f"ln(1/alpha_{k}) = {L:.6g} exceeds the budget {ln_budget:g}")
        Ls.append(L)
        logger.debug(f"alpha_{k}: ln(1/alpha) = {L:.17g}")

    schedule = AlphaSchedule(ln_alphas=tuple(-L for L in Ls), field=F)
    logger.info(f"selected {N} scales, ln(1/alpha) from {Ls[0]:.4g} to {Ls[-1]:.4g}")
    return schedule


def lambda_of(k: int, S: AlphaSchedule) -> LogScalar:
    """lambda_k = alpha_k^(-2/(p0 + psi(alpha_k))), 1-based."""
    if not 1 <= k <= len(S):
        raise IndexError(f"schedule index {k} outside 1..{len(S)}")
    return LogScalar.exp_of(2.0 * S.L(k) / S.p_at_alpha(k))


def constant_lambda_of(k: int, S: AlphaSchedule, p_const: float) -> LogScalar:
    """alpha_k^(-2/p_const), the weights of the constant-exponent control."""
    return LogScalar.exp_of(2.0 * S.L(k) / p_const)
