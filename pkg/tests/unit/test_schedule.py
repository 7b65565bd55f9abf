import math

import pytest

from domains.counterexample.schedule import (
    LN2,
    constant_lambda_of,
    lambda_of,
    select_alphas,
)
from domains.errors import ScheduleError
from domains.varexp.exponent import ExponentField

pytestmark = pytest.mark.unit


@pytest.fixture(scope="module")
def schedule():
    return select_alphas(8, ExponentField())


def test_first_scales_of_the_demo_field(schedule):
    assert schedule.L(1) == pytest.approx(3.1559, abs=1e-4)
    assert schedule.L(2) == pytest.approx(10.27, abs=1e-2)
    assert schedule.L(8) == pytest.approx(133.9, abs=0.1)
    assert len(schedule) == 8


def test_scales_match_the_closed_form(schedule):
    # with psi = 2/sqrt(L) the condition is a quadratic in sqrt(L)
    for k in range(1, len(schedule) + 1):
        root = k * LN2 + math.sqrt((k * LN2) ** 2 + k * LN2)
        assert schedule.L(k) == pytest.approx(root**2, rel=1e-12)


def test_smallest_scale_solves_the_condition(schedule):
    L = schedule.L(1)
    psi = 2.0 / math.sqrt(L)
    assert L * psi - LN2 * (4.0 + psi) == pytest.approx(0.0, abs=1e-12)


def test_schedule_invariants_hold(schedule):
    assert schedule.violations() == []
    for k in range(2, len(schedule) + 1):
        assert schedule.L(k) >= schedule.L(k - 1) + LN2 - 1e-12
    for k in range(1, len(schedule) + 1):
        assert schedule.scale_margin(k) <= 1e-12 * schedule.L(k)


def test_weights_normalize_the_patch_measure(schedule):
    for k in range(1, len(schedule) + 1):
        ln_lam = lambda_of(k, schedule).ln_mag
        # lambda^p(alpha) alpha^2 = 1
        assert schedule.p_at_alpha(k) * ln_lam - 2.0 * schedule.L(k) == pytest.approx(0.0, abs=1e-9)
        # lambda^p0 alpha^2 <= 4^-k
        assert 4.0 * ln_lam - 2.0 * schedule.L(k) <= -2.0 * k * LN2 + 1e-9


def test_alphas_are_available_as_floats(schedule):
    alphas = schedule.alphas
    assert alphas[0] == pytest.approx(math.exp(-schedule.L(1)))
    assert all(a > b for a, b in zip(alphas, alphas[1:], strict=False))


def test_constant_weights():
    S = select_alphas(2, ExponentField())
    assert constant_lambda_of(2, S, 4.0).ln_mag == pytest.approx(S.L(2) / 2.0)


def test_index_outside_the_schedule(schedule):
    with pytest.raises(IndexError):
        lambda_of(0, schedule)
    with pytest.raises(IndexError):
        lambda_of(9, schedule)


def test_schedule_errors():
    with pytest.raises(ScheduleError):
        select_alphas(0, ExponentField())
    with pytest.raises(ScheduleError, match="budget"):
        select_alphas(8, ExponentField(), ln_budget=50.0)
    with pytest.raises(ScheduleError, match="psi = 0"):
        select_alphas(2, ExponentField.constant(4.0), ln_budget=1e3)
