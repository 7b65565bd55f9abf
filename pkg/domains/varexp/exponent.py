"""Exponent fields p(xi) = p0 + psi(theta2)."""

from __future__ import annotations

import math
from enum import Enum

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from domains.geometry.ellipsoid import BoundaryPoint, RealLike


class PsiShape(str, Enum):
    INVERSE_SQRT_LOG = "inverse-sqrt-log"
    INVERSE_LOG = "inverse-log"


class PsiParams(BaseModel):
    """
    Odd profile psi on [-pi, pi].

    inverse-sqrt-log: A / sqrt(ln(1/|theta|)) below cap_point, constant above.
    inverse-log:      A / ln(e + 1/|theta|), log-Hoelder continuous.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    amplitude: float = Field(default=2.0, ge=0)
    cap_point: float = Field(default=math.exp(-1.0), gt=0, lt=1)
    shape: PsiShape = PsiShape.INVERSE_SQRT_LOG

    @property
    def sup(self) -> float:
        """sup |psi| over [-pi, pi]."""
        if self.shape is PsiShape.INVERSE_SQRT_LOG:
            return self.amplitude / math.sqrt(math.log(1.0 / self.cap_point))
        return self.amplitude / math.log(math.e + 1.0 / math.pi)


def psi_from_log(L: RealLike, P: PsiParams) -> RealLike:
    """psi(e^(-L)) for L = ln(1/theta) >= 0, computed without forming theta."""
    L = np.asarray(L, dtype=float)
    if P.shape is PsiShape.INVERSE_SQRT_LOG:
        L_cap = math.log(1.0 / P.cap_point)
        return P.amplitude / np.sqrt(np.maximum(L, L_cap))
    # e + e^L overflows for L > 709; the limit there is A / L
    with np.errstate(over="ignore"):
        return P.amplitude / np.where(L > 700.0, L, np.log(math.e + np.exp(np.minimum(L, 700.0))))


def psi_eval(theta: RealLike, P: PsiParams) -> RealLike:
    """
    Odd, non-decreasing psi with psi(0) = 0.

    Args:
        theta: Angle(s) in [-pi, pi)
        P: Profile parameters

    Returns:
        psi(theta), same shape as theta
    """
    theta = np.asarray(theta, dtype=float)
    mag = np.abs(theta)
    with np.errstate(divide="ignore"):
        L = -np.log(mag)
    value = np.where(mag > 0.0, np.sign(theta) * psi_from_log(np.where(mag > 0.0, L, 0.0), P), 0.0)
    return float(value) if value.ndim == 0 else value


class ExponentField(BaseModel):
    """p(xi) = p0 + psi(theta2); requires inf p > 1."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    p0: float = Field(default=4.0, gt=1)
    psi: PsiParams = PsiParams()

    @model_validator(mode="after")
    def check_range(self) -> ExponentField:
        if not self.p0 - self.psi.sup > 1.0:
            raise ValueError(
                f"exponent constraint inf p = p0 - sup|psi| > 1 violated "
                f"(p0={self.p0}, sup|psi|={self.psi.sup:.6g})"
            )
        return self

    @classmethod
    def constant(cls, p: float) -> ExponentField:
        return cls(p0=p, psi=PsiParams(amplitude=0.0))

    @property
    def is_constant(self) -> bool:
        return self.psi.amplitude == 0.0

    @property
    def p_range(self) -> tuple[float, float]:
        return self.p0 - self.psi.sup, self.p0 + self.psi.sup

    def at_theta(self, theta2: RealLike) -> RealLike:
        return self.p0 + psi_eval(theta2, self.psi)


def exponent_eval(xi: BoundaryPoint, F: ExponentField) -> RealLike:
    """p(xi), depending on xi only through theta2."""
    return F.at_theta(xi.param.theta2)
