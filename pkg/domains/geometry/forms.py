"""
Numerical pullback of the Leray form through the boundary chart.

Used as an independent oracle for leray_density: q = (q1, q2) with
q_j = d rho / d xi_j, and the form q1 dbar(q2) - q2 dbar(q1) wedged with
d xi1 ^ d xi2 is pulled back to (r1, theta1, theta2) using central-difference
Jacobians. Each triple wedge of one-forms is a 3x3 determinant.
"""

from __future__ import annotations

import numpy as np

from domains.geometry.ellipsoid import Ellipsoid, ParamPoint, radial_r2


def _embed(coords: np.ndarray, E: Ellipsoid) -> np.ndarray:
    r1, t1, t2 = coords
    r2 = radial_r2(r1, E)
    return np.array([r1 * np.exp(1j * t1), r2 * np.exp(1j * t2)])


def _jacobian(coords: np.ndarray, E: Ellipsoid, step: float) -> np.ndarray:
    """Rows: xi1, xi2; columns: d/dr1, d/dtheta1, d/dtheta2."""
    jac = np.empty((2, 3), dtype=complex)
    for col in range(3):
        h = step
        lo, hi = coords.copy(), coords.copy()
        lo[col] -= h
        hi[col] += h
        if col == 0:
            # stay inside the chart near r1 in {0, 1}
            lo[0] = max(lo[0], 0.0)
            hi[0] = min(hi[0], 1.0)
        jac[:, col] = (_embed(hi, E) - _embed(lo, E)) / (hi[col] - lo[col])
    return jac


def leray_form_pullback(p: ParamPoint, E: Ellipsoid, step: float = 1e-6) -> complex:
    """
    Coefficient of dr1 ^ dtheta1 ^ dtheta2 in the pulled-back Leray form.

    Args:
        p: Scalar parametric point with r1 in (0, 1)
        E: Ellipsoid
        step: Central-difference step

    Returns:
        Complex coefficient; its modulus equals 2 * leray_density(r1, E)
    """
    coords = np.array([float(p.r1), float(p.theta1), float(p.theta2)])
    xi = _embed(coords, E)
    jac = _jacobian(coords, E, step)

    d_xi1, d_xi2 = jac[0], jac[1]
    d_xibar1, d_xibar2 = np.conj(jac[0]), np.conj(jac[1])

    mod2 = np.abs(xi) ** 2
    m = np.array([E.m1, E.m2])
    q = m * mod2 ** (m - 1.0) * np.conj(xi)
    dbar_q = m**2 * mod2 ** (m - 1.0)

    wedge_2 = np.linalg.det(np.array([d_xibar2, d_xi1, d_xi2]))
    wedge_1 = np.linalg.det(np.array([d_xibar1, d_xi1, d_xi2]))
    return complex(q[0] * dbar_q[1] * wedge_2 - q[1] * dbar_q[0] * wedge_1)
