"""Bracketing and bisection for monotone scalar functions."""

from __future__ import annotations

import math
from collections.abc import Callable

from loguru import logger

from domains.errors import BracketError


def expand_bracket(
    g: Callable[[float], float],
    lo: float,
    hi: float,
    *,
    step: float = 50.0,
    max_expansions: int = 60,
) -> tuple[float, float]:
    """
    Widen [lo, hi] geometrically until g(lo) > 0 >= g(hi) for a decreasing g.

    Raises:
        BracketError: g is non-finite at an upper end, or the bracket cannot be found
    """
    for i in range(max_expansions):
        g_hi = g(hi)
        if math.isnan(g_hi) or g_hi == math.inf:
            raise BracketError(f"non-finite value {g_hi} at upper bracket {hi:.6g}")
        if g_hi <= 0.0:
            break
        hi += step * 2.0**i
    else:
        raise BracketError(f"no sign change above {hi:.6g} after {max_expansions} expansions")

    for i in range(max_expansions):
        if g(lo) > 0.0:
            return lo, hi
        lo -= step * 2.0**i
    raise BracketError(f"no sign change below {lo:.6g} after {max_expansions} expansions")


def bisect_decreasing(
    g: Callable[[float], float],
    lo: float,
    hi: float,
    *,
    y_tol: float = 1e-10,
    x_tol: float = 0.0,
    max_iter: int = 400,
) -> float:
    """
    Root of a decreasing g bracketed by g(lo) > 0 >= g(hi).

    Bisects until |g| <= y_tol at the upper end and the bracket is no wider
    than x_tol (0 means float resolution).

    Returns:
        The upper end of the final bracket, so g(result) <= 0
    """
    g_hi = g(hi)
    for iteration in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        g_mid = g(mid)
        if g_mid > 0.0:
            lo = mid
        else:
            hi, g_hi = mid, g_mid
        if abs(g_hi) <= y_tol and hi - lo <= x_tol:
            break
    else:
        logger.warning(f"bisection hit max_iter={max_iter}: bracket [{lo:.17g}, {hi:.17g}], g={g_hi:.3e}")
        return hi

    logger.debug(f"bisection converged after {iteration + 1} steps: x={hi:.17g}, g={g_hi:.3e}")
    return hi
