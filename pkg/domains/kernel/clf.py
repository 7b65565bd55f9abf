"""
The Cauchy-Leray-Fantappie operator on the ellipsoid boundary.

    K f(z) = 1/(2 pi^2) * integral of f(xi) * leray_density / w(xi, z)^2

with w(xi, z) = sum_j m_j |xi_j|^(2(m_j-1)) conj(xi_j) (xi_j - z_j). The
prefactor is fixed by the reproducing property K 1 = 1.
"""

from __future__ import annotations

import math
from collections.abc import Callable

import numpy as np
import numpy.typing as npt

from domains.errors import NearSingularKernelError
from domains.geometry.ellipsoid import BoundaryPoint, ComplexLike, Density, Ellipsoid, ParamPoint
from domains.geometry.quadrature import ParamBox, QuadratureGrid, boundary_nodes, compensated_sum
from domains.patches.patches import PatchSpec

KERNEL_GUARD = 1e-12
CLF_PREFACTOR = 1.0 / (2.0 * math.pi**2)
_CHUNK_ELEMENTS = 1 << 21

Target = BoundaryPoint | tuple[complex, complex]

REPRODUCING_FAMILY: dict[str, Callable[[ComplexLike, ComplexLike], ComplexLike]] = {
    "1": lambda z1, z2: np.ones_like(z1 * z2),
    "z1": lambda z1, z2: z1,
    "z2": lambda z1, z2: z2,
    "z1*z2": lambda z1, z2: z1 * z2,
    "z1^2": lambda z1, z2: z1 * z1,
}


def w_interior(xi: BoundaryPoint, z: tuple[ComplexLike, ComplexLike], E: Ellipsoid) -> ComplexLike:
    """Direct formula for any z in C^2."""
    z1, z2 = z
    t1 = E.m1 * np.abs(xi.z1) ** (2.0 * (E.m1 - 1.0)) * np.conj(xi.z1) * (xi.z1 - z1)
    t2 = E.m2 * np.abs(xi.z2) ** (2.0 * (E.m2 - 1.0)) * np.conj(xi.z2) * (xi.z2 - z2)
    return t1 + t2


def w_boundary(xi: ParamPoint, z: ParamPoint, E: Ellipsoid) -> ComplexLike:
    """
    w for two boundary points from their chart coordinates, without cancellation.

    Writes xi2 conj(xi2) - conj(xi2) z2 as r2^(2m2-1) [(r2 - s2) + s2 (1 - e^(i d2))]
    with r2 - s2 from expm1/log1p, so Re w stays accurate when the u-bands are
    far below machine epsilon.
    """
    m1, m2 = E.m1, E.m2
    r1 = np.asarray(xi.r1, dtype=float)
    s1 = np.asarray(z.r1, dtype=float)
    u = r1 ** (2.0 * m1)
    v = s1 ** (2.0 * m1)
    c = 1.0 / (2.0 * m2)

    with np.errstate(divide="ignore", invalid="ignore"):
        r2 = np.maximum(1.0 - u, 0.0) ** c
        s2 = np.maximum(1.0 - v, 0.0) ** c
        r2_minus_s2 = np.expm1(c * np.log1p(-u)) - np.expm1(c * np.log1p(-v))

    d1 = np.asarray(z.theta1, dtype=float) - np.asarray(xi.theta1, dtype=float)
    d2 = np.asarray(z.theta2, dtype=float) - np.asarray(xi.theta2, dtype=float)

    a1 = m1 * r1 ** (2.0 * m1 - 1.0) * (r1 - s1 * np.exp(1j * d1))
    one_minus_phase = 2.0 * np.sin(0.5 * d2) ** 2 - 1j * np.sin(d2)
    a2 = m2 * r2 ** (2.0 * m2 - 1.0) * (r2_minus_s2 + s2 * one_minus_phase)
    return a1 + a2


def w_eval(xi: BoundaryPoint, z: Target, E: Ellipsoid) -> ComplexLike:
    """w(xi, z); uses the cancellation-free form when z is a boundary point."""
    if isinstance(z, BoundaryPoint):
        return w_boundary(xi.param, z.param, E)
    return w_interior(xi, z, E)


def _guard(w: npt.NDArray[np.complex128], guard: float, *, relative: bool = False) -> None:
    mag = np.abs(w)
    index = int(np.argmin(mag))
    threshold = guard * float(np.max(mag)) if relative else guard
    if mag.flat[index] < threshold:
        raise NearSingularKernelError(index, float(mag.flat[index]), threshold)


def clf_apply(
    f: Callable[[BoundaryPoint], ComplexLike],
    box: ParamBox,
    z: Target,
    grid: QuadratureGrid,
    E: Ellipsoid,
    *,
    guard: float = KERNEL_GUARD,
) -> complex:
    """
    Apply K to f supported on box and evaluate at a single point z.

    Args:
        f: Vectorized function on boundary points (zero outside box)
        box: Support of f in the chart
        z: Interior complex pair, or a boundary point outside the support
        grid: Quadrature grid on the support
        E: Ellipsoid
        guard: Smallest admissible |w| at any node

    Raises:
        NearSingularKernelError: |w| < guard at some node
    """
    nodes = boundary_nodes(box, grid, Density.LERAY, E)
    points = nodes.points(E)
    w = np.asarray(w_eval(points, z, E), dtype=complex)
    _guard(w, guard)
    values = np.asarray(f(points), dtype=complex) * nodes.weights / w**2
    return CLF_PREFACTOR * compensated_sum(values)


def patch_image(
    patch: PatchSpec,
    targets: ParamPoint,
    grid: QuadratureGrid,
    E: Ellipsoid,
    *,
    guard: float = KERNEL_GUARD,
) -> npt.NDArray[np.complex128]:
    """
    H_W(z) = K chi_W(z) for a batch of boundary targets.

    Args:
        patch: Source patch W
        targets: Chart coordinates of the evaluation points (1-D arrays)
        grid: Quadrature grid on the patch
        E: Ellipsoid
        guard: Smallest admissible |w| as a fraction of the largest |w| in a target block

    Returns:
        Complex array with one value per target

    Raises:
        NearSingularKernelError: min |w| < guard * max |w| within a target block
    """
    nodes = boundary_nodes(patch.box(E), grid, Density.LERAY, E)
    source = nodes.param.reshaped((1, nodes.size))
    n_targets = len(targets)
    chunk = max(1, _CHUNK_ELEMENTS // nodes.size)

    r1 = np.atleast_1d(targets.r1)
    t1 = np.atleast_1d(targets.theta1)
    t2 = np.atleast_1d(targets.theta2)

    out = np.empty(n_targets, dtype=complex)
    for start in range(0, n_targets, chunk):
        stop = min(start + chunk, n_targets)
        block = ParamPoint(r1[start:stop, None], t1[start:stop, None], t2[start:stop, None])
        w = w_boundary(source, block, E)
        _guard(w, guard, relative=True)
        out[start:stop] = CLF_PREFACTOR * np.sum(nodes.weights[None, :] / w**2, axis=1)
    return out


def clf_reproducing_check(
    E: Ellipsoid, z: tuple[complex, complex], f_name: str, grid: QuadratureGrid
) -> tuple[complex, complex, float]:
    """
    Compare K f(z) with f(z) for a holomorphic monomial over the full boundary.

    Returns:
        (K f(z), f(z), error) where error is |K f(z) - f(z)| / max(|f(z)|, 1e-3)
    """
    f = REPRODUCING_FAMILY[f_name]
    value = clf_apply(lambda p: f(p.z1, p.z2), ParamBox.full(), z, grid, E)
    expected = complex(f(complex(z[0]), complex(z[1])))
    error = abs(value - expected) / max(abs(expected), 1e-3)
    return value, expected, error
