import math

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from domains.errors import PatchError
from domains.geometry.ellipsoid import Density, Ellipsoid
from domains.geometry.quadrature import QuadratureGrid, boundary_nodes
from domains.patches.patches import PatchKind, analytic_measure_coefficient, choose_gammas, make_patch
from domains.varexp.exponent import ExponentField, exponent_eval
from domains.varexp.logscalar import LogScalar
from domains.varexp.luxemburg import ModularIntegrand, PatchSum, luxemburg_norm, modular

pytestmark = pytest.mark.unit

TOL = 1e-10

_E = Ellipsoid(2.0, 3.0)
_UNIT_INTEGRAND = ModularIntegrand(
    PatchSum.of([(LogScalar.one(), make_patch(PatchKind.SOURCE, 1e-2, choose_gammas(_E)))]),
    ExponentField(),
    QuadratureGrid(n_r=3, n_t1=2, n_t2=2),
    _E,
    Density.LERAY,
)


@pytest.fixture
def W(gammas23):
    return make_patch(PatchKind.SOURCE, 1e-2, gammas23)


def test_patch_sum_validation(gammas23, W):
    with pytest.raises(PatchError, match="positive"):
        PatchSum.of([(LogScalar.from_float(-1.0), W)])
    overlapping = make_patch(PatchKind.SOURCE, 1.5e-2, gammas23)
    with pytest.raises(PatchError, match="disjoint"):
        PatchSum.of([(LogScalar.one(), W), (LogScalar.one(), overlapping)])
    assert PatchSum.of([]).is_zero
    assert len(PatchSum.of([(LogScalar.one(), W)])) == 1


def test_constant_exponent_closed_form(E23, W, small_grid):
    F = ExponentField.constant(4.0)
    c = 7.0
    f = PatchSum.of([(LogScalar.from_float(c), W)])
    S = analytic_measure_coefficient(W, E23) * W.alpha**2

    value = modular(f, LogScalar.from_float(2.0), F, small_grid, E23)
    assert value.to_float() == pytest.approx((c / 2.0) ** 4 * S, rel=1e-10)

    norm = luxemburg_norm(f, F, small_grid, TOL, E23)
    assert norm.ln_mag == pytest.approx(math.log(c) + math.log(S) / 4.0, abs=1e-9)


def test_modular_matches_mpmath_at_a_huge_weight(E23, W):
    F = ExponentField()
    grid = QuadratureGrid(n_r=4, n_t1=3, n_t2=3)
    f = PatchSum.of([(LogScalar.exp_of(500.0), W)])
    value = modular(f, LogScalar.one(), F, grid, E23)

    nodes = boundary_nodes(W.box(E23), grid, Density.LERAY, E23)
    exponents = exponent_eval(nodes.points(E23), F)
    with mpmath.workdps(50):
        total = mpmath.fsum(
            mpmath.exp(500 * mpmath.mpf(float(p))) * mpmath.mpf(float(w))
            for p, w in zip(exponents, nodes.weights, strict=True)
        )
        expected = float(mpmath.log(total))
    assert value.ln_mag == pytest.approx(expected, rel=1e-13)


def test_norm_is_homogeneous(E23, W, small_grid):
    F = ExponentField()
    f = PatchSum.of([(LogScalar.exp_of(40.0), W)])
    base = luxemburg_norm(f, F, small_grid, TOL, E23)
    scaled = luxemburg_norm(f.scaled(LogScalar.exp_of(3.0)), F, small_grid, TOL, E23)
    assert scaled.ln_mag == pytest.approx(base.ln_mag + 3.0, rel=1e-12)


def test_two_patch_norm_matches_an_mpmath_root(E23, gammas23, small_grid):
    F = ExponentField()
    terms = [
        (LogScalar.exp_of(30.0), make_patch(PatchKind.SOURCE, 1e-2, gammas23)),
        (LogScalar.exp_of(25.0), make_patch(PatchKind.SOURCE, 1e-3, gammas23)),
    ]
    norm = luxemburg_norm(PatchSum.of(terms), F, small_grid, TOL, E23)

    samples = []
    for weight, patch in terms:
        nodes = boundary_nodes(patch.box(E23), small_grid, Density.LERAY, E23)
        exponents = exponent_eval(nodes.points(E23), F)
        samples += [(weight.ln_mag, float(p), float(w)) for p, w in zip(exponents, nodes.weights, strict=True)]

    with mpmath.workdps(50):

        def ln_modular(t):
            return mpmath.log(mpmath.fsum(mpmath.exp(p * (ln_c - t)) * mpmath.mpf(w) for ln_c, p, w in samples))

        root = mpmath.findroot(ln_modular, (mpmath.mpf(30), mpmath.mpf(29)))
        expected = float(root)
    assert norm.ln_mag == pytest.approx(expected, abs=1e-8)
    assert 20.0 < expected < 30.0


def test_norm_is_where_the_modular_crosses_one(E23, W, small_grid):
    F = ExponentField()
    f = PatchSum.of([(LogScalar.exp_of(200.0), W)])
    norm = luxemburg_norm(f, F, small_grid, TOL, E23)
    at_norm = modular(f, norm, F, small_grid, E23)
    assert at_norm.ln_mag <= 0.0
    assert abs(at_norm.ln_mag) <= TOL


@given(a=st.floats(-50.0, 50.0), b=st.floats(-50.0, 50.0))
def test_modular_is_non_increasing_in_lambda(a, b):
    lo, hi = sorted((a, b))
    assert _UNIT_INTEGRAND.ln_modular(lo) >= _UNIT_INTEGRAND.ln_modular(hi) - 1e-12


def test_zero_function_and_bad_lambda(E23, W, small_grid):
    F = ExponentField()
    empty = PatchSum.of([])
    assert modular(empty, LogScalar.one(), F, small_grid, E23).is_zero
    assert luxemburg_norm(empty, F, small_grid, TOL, E23).is_zero
    with pytest.raises(ValueError):
        modular(PatchSum.of([(LogScalar.one(), W)]), LogScalar.zero(), F, small_grid, E23)


def test_sigma_density_gives_a_smaller_norm(E23, W, small_grid):
    F = ExponentField()
    f = PatchSum.of([(LogScalar.one(), W)])
    leray = luxemburg_norm(f, F, small_grid, TOL, E23)
    sigma = luxemburg_norm(f, F, small_grid, TOL, E23, Density.SIGMA)
    assert sigma < leray
