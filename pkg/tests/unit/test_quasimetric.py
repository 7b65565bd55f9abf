import math

import numpy as np
import pytest

from domains.errors import GeometryError
from domains.geometry.ellipsoid import ParamPoint, lift
from domains.varexp.exponent import ExponentField, PsiParams, PsiShape
from domains.varexp.quasimetric import (
    direct_quasimetric,
    euclidean_distance,
    log_holder_modulus,
    quasimetric,
    quasimetric_comparison,
    sample_boundary_pairs,
    straddling_pairs,
)

pytestmark = pytest.mark.unit


def test_antipodal_points_of_the_sphere(sphere):
    xi = lift(ParamPoint(1.0, 0.0, 0.0), sphere)
    z = lift(ParamPoint(1.0, math.pi, 0.0), sphere)
    assert quasimetric(xi, z, sphere) == pytest.approx(4.0)
    assert euclidean_distance(xi, z) == pytest.approx(2.0)


def test_quasimetric_is_symmetric_and_vanishes_on_the_diagonal(E23):
    xi, z = sample_boundary_pairs(64, np.random.default_rng(3), E23)
    assert np.array_equal(quasimetric(xi, z, E23), quasimetric(z, xi, E23))
    assert np.all(quasimetric(xi, xi, E23) == 0.0)


def test_comparison_constants(E23):
    comparison = quasimetric_comparison(*sample_boundary_pairs(500, np.random.default_rng(5), E23), E23)
    assert comparison.delta == 3.0
    assert comparison.lower_constant > 0.0
    assert np.isfinite(comparison.upper_constant)
    assert comparison.max_formula_gap < 1e-12
    assert comparison.sample_count == 500


def test_direct_formula_agrees_with_the_chart_form(E23, sphere):
    xi, z = sample_boundary_pairs(200, np.random.default_rng(11), E23)
    np.testing.assert_allclose(direct_quasimetric(xi, z, E23), quasimetric(xi, z, E23), rtol=0, atol=1e-12)

    north = lift(ParamPoint(1.0, 0.0, 0.0), sphere)
    south = lift(ParamPoint(1.0, math.pi, 0.0), sphere)
    assert direct_quasimetric(north, south, sphere) == pytest.approx(4.0)


def test_comparison_needs_distinct_points(E23):
    xi = lift(ParamPoint(np.array([0.5]), np.array([0.0]), np.array([0.0])), E23)
    with pytest.raises(GeometryError):
        quasimetric_comparison(xi, xi, E23)


def test_straddling_pairs_sit_on_the_circle(E23):
    xi, z = straddling_pairs(1e-4, E23)
    assert xi.z1 == 0 and z.z1 == 0
    assert euclidean_distance(xi, z) == pytest.approx(2.0 * math.sin(1e-4))


def test_constant_field_has_zero_modulus(E23):
    pairs = [straddling_pairs(a, E23) for a in (1e-2, 1e-5)]
    assert log_holder_modulus(pairs, ExponentField.constant(3.0)) == 0.0


@pytest.mark.parametrize("alpha", [1e-2, 1e-8])
def test_counterexample_modulus_closed_form(alpha, E23):
    L = math.log(1.0 / alpha)
    expected = 4.0 / math.sqrt(L) * abs(math.log(2.0 * math.sin(alpha)))
    assert log_holder_modulus([straddling_pairs(alpha, E23)], ExponentField()) == pytest.approx(expected, rel=1e-12)


def test_counterexample_grows_while_the_control_stays_flat(E23):
    field = ExponentField()
    control = ExponentField(psi=PsiParams(amplitude=1.0, shape=PsiShape.INVERSE_LOG))
    coarse, fine = straddling_pairs(1e-2, E23), straddling_pairs(1e-8, E23)

    growth = log_holder_modulus([fine], field) / log_holder_modulus([coarse], field)
    drift = log_holder_modulus([fine], control) / log_holder_modulus([coarse], control)
    assert growth == pytest.approx(2.27, abs=0.01)
    assert 1.0 < drift < 1.5


def test_counterexample_growth_down_to_one_in_a_million(E23):
    field = ExponentField()
    coarse = log_holder_modulus([straddling_pairs(1e-2, E23)], field)
    fine = log_holder_modulus([straddling_pairs(1e-6, E23)], field)
    assert fine / coarse == pytest.approx(1.937, abs=0.005)


def test_modulus_rejects_far_or_coincident_pairs(E23, sphere):
    xi = lift(ParamPoint(0.5, 0.0, 0.1), E23)
    with pytest.raises(GeometryError):
        log_holder_modulus([(xi, xi)], ExponentField())
    far = (lift(ParamPoint(1.0, 0.0, 0.0), sphere), lift(ParamPoint(1.0, math.pi, 0.0), sphere))
    with pytest.raises(GeometryError):
        log_holder_modulus([far], ExponentField())
