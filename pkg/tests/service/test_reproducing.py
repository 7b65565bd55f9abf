"""
Service-level test of the reproducing property.

K f(z) = f(z) for holomorphic f and interior z is the defining property of the
operator; it exercises the chart, the Leray density, the graded quadrature and
the kernel together.
"""

import pytest

from domains.geometry.ellipsoid import Ellipsoid
from domains.geometry.quadrature import QuadratureGrid, QuadratureRule
from domains.kernel.clf import REPRODUCING_FAMILY, clf_reproducing_check

pytestmark = pytest.mark.service

GRID = QuadratureGrid(n_r=64, n_t1=48, n_t2=48, rule=QuadratureRule.GRADED)
POINTS = [(0j, 0j), (0.1 + 0j, 0.2 - 0.1j)]


@pytest.mark.parametrize("m1,m2", [(1.0, 1.0), (2.0, 3.0), (1.5, 2.0)])
@pytest.mark.parametrize("z", POINTS)
@pytest.mark.parametrize("f_name", list(REPRODUCING_FAMILY))
def test_monomials_are_reproduced(m1, m2, z, f_name):
    value, expected, error = clf_reproducing_check(Ellipsoid(m1, m2), z, f_name, GRID)
    assert error < 1e-6, f"K({f_name})({z}) = {value} instead of {expected}"


def test_constant_is_reproduced_exactly_on_the_sphere():
    grid = QuadratureGrid(n_r=4, n_t1=4, n_t2=4)
    _, _, error = clf_reproducing_check(Ellipsoid(1.0, 1.0), (0j, 0j), "1", grid)
    assert error < 1e-13


def test_nonzero_monomial_vanishes_at_the_origin():
    value, expected, _ = clf_reproducing_check(Ellipsoid(2.0, 3.0), (0j, 0j), "z1*z2", GRID)
    assert expected == 0
    assert abs(value) < 1e-9
