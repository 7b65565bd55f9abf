import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from domains.varexp.logscalar import LogScalar, log_sum

pytestmark = pytest.mark.unit

ints = st.integers(min_value=-10**6, max_value=10**6)
nonzero = ints.filter(lambda n: n != 0)


@given(ints, ints)
def test_addition_matches_floats(a, b):
    total = LogScalar.from_float(float(a)) + LogScalar.from_float(float(b))
    assert total.to_float() == pytest.approx(a + b, rel=1e-9, abs=1e-9 * max(abs(a), abs(b), 1))


@given(nonzero, nonzero)
def test_multiplication_and_division_match_floats(a, b):
    x, y = LogScalar.from_float(float(a)), LogScalar.from_float(float(b))
    assert (x * y).to_float() == pytest.approx(a * b, rel=1e-12)
    assert (x / y).to_float() == pytest.approx(a / b, rel=1e-12)


@given(ints, ints)
def test_ordering_matches_floats(a, b):
    x, y = LogScalar.from_float(float(a)), LogScalar.from_float(float(b))
    assert (x < y) == (a < b)
    assert (x == y) == (a == b)


@given(nonzero)
def test_self_subtraction_is_exact_zero(a):
    x = LogScalar.from_float(float(a))
    assert (x - x).is_zero
    assert (x - x) == LogScalar.zero()


def test_values_beyond_the_float_range():
    big = LogScalar.exp_of(1000.0)
    assert big.to_float() == math.inf
    assert (big * LogScalar.exp_of(-999.0)).to_float() == pytest.approx(math.e)
    assert (big + big).ln_mag == pytest.approx(1000.0 + math.log(2.0))
    assert (-big).to_float() == -math.inf
    assert LogScalar.exp_of(-1000.0).to_float() == 0.0


def test_powers():
    assert (LogScalar.from_float(-2.0) ** 3).to_float() == pytest.approx(-8.0)
    assert (LogScalar.from_float(-2.0) ** 2).to_float() == pytest.approx(4.0)
    assert (LogScalar.exp_of(10.0) ** 0.5).ln_mag == 5.0
    with pytest.raises(ValueError):
        LogScalar.from_float(-2.0) ** 0.5
    with pytest.raises(ZeroDivisionError):
        LogScalar.zero() ** -1


def test_zero_behaviour():
    zero = LogScalar.zero()
    one = LogScalar.one()
    assert zero + one == one
    assert (zero * one).is_zero
    assert LogScalar.exp_of(-math.inf).is_zero
    assert LogScalar.sum([]) == zero
    assert LogScalar.sum([one, one, one]).to_float() == pytest.approx(3.0)
    with pytest.raises(ZeroDivisionError):
        one / zero
    with pytest.raises(ValueError):
        zero.log()
    assert abs(LogScalar.from_float(-4.0)) == LogScalar.from_float(4.0)
    assert len({zero, LogScalar.zero(), one}) == 2


def test_invalid_construction():
    with pytest.raises(ValueError):
        LogScalar(2, 0.0)
    with pytest.raises(ValueError):
        LogScalar(1, math.nan)


def test_log_sum():
    assert log_sum(np.array([])) == -math.inf
    assert log_sum(np.zeros(2)) == pytest.approx(math.log(2.0))
    assert log_sum(np.array([1000.0, 1000.0])) == pytest.approx(1000.0 + math.log(2.0))
