"""
Complex ellipsoid {|z1|^(2 m1) + |z2|^(2 m2) < 1} in C^2 and its boundary chart.

Boundary points are parametrized by (r1, theta1, theta2) with
z1 = r1 e^(i theta1), z2 = r2(r1) e^(i theta2), r2(r1) = (1 - r1^(2 m1))^(1/(2 m2)).
All functions accept scalars or numpy arrays and broadcast.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
import numpy.typing as npt

from domains.errors import GeometryError

RealLike = float | npt.NDArray[np.float64]
ComplexLike = complex | npt.NDArray[np.complex128]

BOUNDARY_TOLERANCE = 1e-12


@dataclass(frozen=True, slots=True)
class Ellipsoid:
    """Exponent pair (m1, m2) of the defining function."""

    m1: float
    m2: float

    def __post_init__(self) -> None:
        for name, value in (("m1", self.m1), ("m2", self.m2)):
            if not math.isfinite(value) or value < 1.0:
                raise GeometryError(f"ellipsoid exponent {name} must be a finite real >= 1, got {value}")

    @property
    def label(self) -> str:
        """Stable key used in fixtures and report headers."""
        return f"m1={self.m1:g},m2={self.m2:g}"

    @property
    def delta(self) -> float:
        """max(m1, m2), the exponent of the quasimetric lower comparison."""
        return max(self.m1, self.m2)

    @property
    def is_sphere(self) -> bool:
        return self.m1 == 1.0 and self.m2 == 1.0


@dataclass(frozen=True, slots=True)
class ParamPoint:
    """Parametric coordinates (r1, theta1, theta2); arrays allowed."""

    r1: RealLike
    theta1: RealLike
    theta2: RealLike

    def __post_init__(self) -> None:
        r1 = np.asarray(self.r1, dtype=float)
        if np.any(~np.isfinite(r1)) or np.any(r1 < 0.0) or np.any(r1 > 1.0):
            raise GeometryError("radial coordinate r1 must lie in [0, 1]")

    def reshaped(self, shape: tuple[int, ...]) -> ParamPoint:
        """Return a copy whose coordinate arrays are reshaped for broadcasting."""
        return ParamPoint(
            r1=np.reshape(self.r1, shape),
            theta1=np.reshape(self.theta1, shape),
            theta2=np.reshape(self.theta2, shape),
        )

    def __len__(self) -> int:
        return int(np.size(self.r1))


@dataclass(frozen=True, slots=True)
class BoundaryPoint:
    """A point of the boundary together with its parametric coordinates."""

    param: ParamPoint
    z1: ComplexLike
    z2: ComplexLike

    @property
    def r2(self) -> RealLike:
        return np.abs(self.z2)

    def pair(self) -> tuple[ComplexLike, ComplexLike]:
        return self.z1, self.z2

    def __len__(self) -> int:
        return len(self.param)


class Density(str, Enum):
    """Surface weight selector for boundary integrals."""

    LERAY = "leray"
    SIGMA = "sigma"


def wrap_angle(theta: RealLike) -> RealLike:
    """Normalize angles to [-pi, pi); angles already in range are returned bit-for-bit."""
    t = np.asarray(theta, dtype=float)
    wrapped = np.mod(t + math.pi, 2.0 * math.pi) - math.pi
    return np.where((t >= -math.pi) & (t < math.pi), t, wrapped)


def defining_rho(z: tuple[ComplexLike, ComplexLike], E: Ellipsoid) -> RealLike:
    """Return |z1|^(2 m1) + |z2|^(2 m2) - 1: negative inside, zero on the boundary."""
    z1, z2 = z
    return np.abs(z1) ** (2.0 * E.m1) + np.abs(z2) ** (2.0 * E.m2) - 1.0


def radial_r2(r1: RealLike, E: Ellipsoid) -> RealLike:
    """r2(r1) = (1 - r1^(2 m1))^(1/(2 m2))."""
    u = np.asarray(r1, dtype=float) ** (2.0 * E.m1)
    return np.maximum(1.0 - u, 0.0) ** (1.0 / (2.0 * E.m2))


def radial_r2_prime(r1: RealLike, E: Ellipsoid) -> RealLike:
    """Magnitude of dr2/dr1; infinite at r1 = 1."""
    r1 = np.asarray(r1, dtype=float)
    u = r1 ** (2.0 * E.m1)
    with np.errstate(divide="ignore"):
        return (E.m1 / E.m2) * r1 ** (2.0 * E.m1 - 1.0) * (1.0 - u) ** (1.0 / (2.0 * E.m2) - 1.0)


def lift(p: ParamPoint, E: Ellipsoid) -> BoundaryPoint:
    """
    Embed parametric coordinates into C^2.

    Args:
        p: Parametric point(s); r1 must lie in [0, 1]
        E: Ellipsoid

    Returns:
        BoundaryPoint with z1 = r1 e^(i theta1), z2 = r2(r1) e^(i theta2)
    """
    r1 = np.asarray(p.r1, dtype=float)
    if np.any(r1 < 0.0) or np.any(r1 > 1.0):
        raise GeometryError("lift requires r1 in [0, 1]")

    theta1 = wrap_angle(p.theta1)
    theta2 = wrap_angle(p.theta2)
    z1 = r1 * np.exp(1j * theta1)
    z2 = radial_r2(r1, E) * np.exp(1j * theta2)

    if np.ndim(z1) == 0:
        z1, z2 = complex(z1), complex(z2)
        theta1, theta2 = float(theta1), float(theta2)
        r1 = float(r1)

    return BoundaryPoint(param=ParamPoint(r1, theta1, theta2), z1=z1, z2=z2)


def leray_density(r1: RealLike, E: Ellipsoid) -> RealLike:
    """
    Exact pullback of the Leray form to (r1, theta1, theta2): m1^2 m2 r1^(2 m1 - 1).

    The form's coefficient is 2 m1^2 m2 r1^(2 m1 - 1); the factor 2 is absorbed
    into the 1/(2 pi^2) normalization of the operator.
    """
    return E.m1**2 * E.m2 * np.asarray(r1, dtype=float) ** (2.0 * E.m1 - 1.0)


def sigma_density(r1: RealLike, E: Ellipsoid) -> RealLike:
    """
    Weighted Euclidean surface density m1 m2 |xi1|^(2(m1-1)) |xi2|^(2(m2-1)) dsigma.

    Evaluated as m1 m2 r1^(2m1-1) sqrt(r2^(2(2m2-1)) + (m1/m2)^2 r1^(2(2m1-1))), which
    equals m1 m2 r1^(2m1-1) r2^(2m2-1) sqrt(1 + r2'^2) and stays finite at r1 = 1.
    """
    r1 = np.asarray(r1, dtype=float)
    r2 = radial_r2(r1, E)
    root = np.sqrt(
        r2 ** (2.0 * (2.0 * E.m2 - 1.0))
        + (E.m1 / E.m2) ** 2 * r1 ** (2.0 * (2.0 * E.m1 - 1.0))
    )
    return E.m1 * E.m2 * r1 ** (2.0 * E.m1 - 1.0) * root


def density_values(density: Density, r1: RealLike, E: Ellipsoid) -> RealLike:
    if density is Density.LERAY:
        return leray_density(r1, E)
    return sigma_density(r1, E)


def density_ratio_interval(E: Ellipsoid, n: int = 4001) -> tuple[float, float]:
    """
    Sampled range of leray_density / sigma_density over r1 in [1e-6, 1 - 1e-6].

    The ratio tends to m1 as r1 -> 0 and to m2 as r1 -> 1.
    """
    r1 = np.linspace(1e-6, 1.0 - 1e-6, n)
    ratio = leray_density(r1, E) / sigma_density(r1, E)
    return float(np.min(ratio)), float(np.max(ratio))
