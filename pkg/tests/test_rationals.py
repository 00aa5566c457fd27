from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from entireode.rationals import GaussianRational, as_gaussian

rationals = st.fractions(max_numerator=50, max_denominator=12)
gaussians = st.builds(GaussianRational, rationals, rationals)


def test_basic_arithmetic():
    a = GaussianRational(1, 2)
    b = GaussianRational(Fraction(1, 2), -1)
    assert a + b == GaussianRational(Fraction(3, 2), 1)
    assert a - a == 0
    assert a * b == GaussianRational(Fraction(5, 2), 0)  # (1+2i)(1/2-i) = 1/2 - i + i + 2
    assert -a == GaussianRational(-1, -2)


def test_division_exact():
    a = GaussianRational(1, 2)
    assert (a * a) / a == a
    assert GaussianRational(1) / GaussianRational(0, 1) == GaussianRational(0, -1)
    with pytest.raises(ZeroDivisionError):
        a / GaussianRational(0)


def test_mixed_scalar_arithmetic():
    a = GaussianRational(1, 1)
    assert 2 * a == GaussianRational(2, 2)
    assert a + Fraction(1, 2) == GaussianRational(Fraction(3, 2), 1)
    assert 1 - a == GaussianRational(0, -1)
    assert a == a + 0


def test_equality_and_hash_against_rationals():
    assert GaussianRational(3) == 3
    assert hash(GaussianRational(3)) == hash(Fraction(3))
    assert GaussianRational(0, 1) != 0
    assert bool(GaussianRational(0)) is False


def test_as_gaussian_rejects_floats():
    with pytest.raises(TypeError):
        as_gaussian(0.5)


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a


@given(gaussians)
def test_multiplicative_inverse(a):
    if a:
        assert a / a == 1
        assert (1 / a) * a == 1


@given(gaussians)
def test_conjugate_norm(a):
    n = a * a.conjugate()
    assert n.im == 0
    assert n.re == a.re * a.re + a.im * a.im
