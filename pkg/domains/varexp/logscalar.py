"""
Reals stored as sign and natural log of magnitude.

lambda_k, modular values and norms in the counterexample range far past
exp(709), so every such quantity is carried as a LogScalar.
"""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass
from functools import total_ordering

import numpy as np
from scipy.special import logsumexp as _logsumexp


@total_ordering
@dataclass(frozen=True, slots=True)
class LogScalar:
    """sign in {-1, 0, +1}; ln_mag is ignored (kept at -inf) when sign = 0."""

    sign: int
    ln_mag: float

    def __post_init__(self) -> None:
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"LogScalar sign must be -1, 0 or 1, got {self.sign}")
        if self.sign != 0 and math.isnan(self.ln_mag):
            raise ValueError("LogScalar ln_mag is NaN")

    @classmethod
    def zero(cls) -> LogScalar:
        return cls(0, -math.inf)

    @classmethod
    def one(cls) -> LogScalar:
        return cls(1, 0.0)

    @classmethod
    def exp_of(cls, ln: float) -> LogScalar:
        """The positive number e^ln."""
        if ln == -math.inf:
            return cls.zero()
        return cls(1, float(ln))

    @classmethod
    def from_float(cls, x: float) -> LogScalar:
        if x == 0.0:
            return cls.zero()
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    @classmethod
    def sum(cls, values: Iterable[LogScalar]) -> LogScalar:
        total = cls.zero()
        for v in values:
            total = total + v
        return total

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def to_float(self) -> float:
        """Native value; overflows to +-inf and underflows to 0."""
        if self.sign == 0:
            return 0.0
        if self.ln_mag > 709.78:
            return self.sign * math.inf
        return self.sign * math.exp(self.ln_mag)

    def log(self) -> float:
        if self.sign <= 0:
            raise ValueError("log of a non-positive LogScalar")
        return self.ln_mag

    def __neg__(self) -> LogScalar:
        return LogScalar(-self.sign, self.ln_mag)

    def __abs__(self) -> LogScalar:
        return LogScalar(abs(self.sign), self.ln_mag)

    def __mul__(self, other: LogScalar) -> LogScalar:
        if self.sign == 0 or other.sign == 0:
            return LogScalar.zero()
        return LogScalar(self.sign * other.sign, self.ln_mag + other.ln_mag)

    def __truediv__(self, other: LogScalar) -> LogScalar:
        if other.sign == 0:
            raise ZeroDivisionError("LogScalar division by zero")
        if self.sign == 0:
            return LogScalar.zero()
        return LogScalar(self.sign * other.sign, self.ln_mag - other.ln_mag)

    def __pow__(self, p: float) -> LogScalar:
        if self.sign == 0:
            if p > 0:
                return LogScalar.zero()
            raise ZeroDivisionError("non-positive power of zero")
        if self.sign < 0:
            if float(p).is_integer():
                sign = -1 if int(p) % 2 else 1
                return LogScalar(sign, p * self.ln_mag)
            raise ValueError("fractional power of a negative LogScalar")
        return LogScalar(1, p * self.ln_mag)

    def __add__(self, other: LogScalar) -> LogScalar:
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        big, small = (self, other) if self.ln_mag >= other.ln_mag else (other, self)
        diff = small.ln_mag - big.ln_mag
        if big.sign == small.sign:
            return LogScalar(big.sign, big.ln_mag + math.log1p(math.exp(diff)))
        if diff == 0.0:
            return LogScalar.zero()
        return LogScalar(big.sign, big.ln_mag + math.log1p(-math.exp(diff)))

    def __sub__(self, other: LogScalar) -> LogScalar:
        return self + (-other)

    def __lt__(self, other: LogScalar) -> bool:
        if self.sign != other.sign:
            return self.sign < other.sign
        if self.sign == 0:
            return False
        if self.sign > 0:
            return self.ln_mag < other.ln_mag
        return self.ln_mag > other.ln_mag

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LogScalar):
            return NotImplemented
        if self.sign == 0 or other.sign == 0:
            return self.sign == other.sign
        return self.sign == other.sign and self.ln_mag == other.ln_mag

    def __hash__(self) -> int:
        return hash((self.sign, self.ln_mag if self.sign else None))

    def __repr__(self) -> str:
        if self.sign == 0:
            return "LogScalar(0)"
        return f"LogScalar({'-' if self.sign < 0 else ''}e^{self.ln_mag:.17g})"


def log_sum(ln_terms: np.ndarray) -> float:
    """ln(sum(exp(ln_terms))) for positive terms; -inf for an empty array."""
    ln_terms = np.asarray(ln_terms, dtype=float)
    if ln_terms.size == 0:
        return -math.inf
    return float(_logsumexp(ln_terms))
