from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from invring.kernel import (DegreePolynomial, SeriesError, TruncatedSeries, dominates,
                            geometric_factor, is_palindromic, is_unimodal, one_minus_power,
                            series_mul)


def ints(s):
    return s.integers()


def test_binomial_square():
    a = TruncatedSeries([1, 1], bound=2)
    assert ints(series_mul(a, a)) == [1, 2, 1]


def test_inverse_pair_cancels():
    assert ints(geometric_factor(1, 1, 5) * one_minus_power(1, 1, 5)) == [1, 0, 0, 0, 0, 0]


def test_product_of_two_geometric_series():
    s = geometric_factor(1, 1, 5) * geometric_factor(2, 1, 5)
    assert ints(s) == [1, 1, 2, 2, 3, 3]


@pytest.mark.parametrize("a,b,bound,expected", [
    (1, 1, 3, [1, 1, 1, 1]),
    (2, 1, 5, [1, 0, 1, 0, 1, 0]),
    (2, 2, 4, [1, 0, 2, 0, 3]),
])
def test_geometric_factor(a, b, bound, expected):
    assert ints(geometric_factor(a, b, bound)) == expected


def test_geometric_factor_rejects_bad_input():
    with pytest.raises(SeriesError):
        geometric_factor(0, 1, 3)
    with pytest.raises(SeriesError):
        geometric_factor(1, -1, 3)


def test_mismatched_bounds_are_errors():
    with pytest.raises(SeriesError):
        TruncatedSeries([1, 1]) * TruncatedSeries([1, 1, 1])
    with pytest.raises(SeriesError):
        dominates(TruncatedSeries([1]), TruncatedSeries([1, 2]))


def test_coefficients_are_rational():
    s = TruncatedSeries([1, 2]).scale(Fraction(1, 2))
    assert s[1] == 1 and isinstance(s[0], Fraction)
    with pytest.raises(SeriesError):
        s.integers()


def test_dominance_examples():
    assert dominates(TruncatedSeries([1, 1, 1]), TruncatedSeries([1, 2, 3])).dominated
    v = dominates(TruncatedSeries([1, 3]), TruncatedSeries([1, 2]))
    assert not v and v.first_failure == 1


@pytest.mark.parametrize("coeffs,expected", [
    ([1, 2, 3, 2, 1], True),
    ([1, 0, 2], False),
    ([1, 1, 1, 1, 0, 1], False),
    ([0, 0, 1, 3, 3, 0], True),
])
def test_unimodal(coeffs, expected):
    assert is_unimodal(coeffs) is expected


def test_unimodal_skip_ends():
    assert not is_unimodal([1, 0, 2, 3])
    assert is_unimodal([1, 0, 2, 3], skip_ends=True)


@pytest.mark.parametrize("coeffs,expected", [([1, 2, 1], True), ([1, 2, 3], False)])
def test_palindromic(coeffs, expected):
    assert is_palindromic(DegreePolynomial(coeffs)) is expected


def test_degree_polynomial_bookkeeping():
    p = DegreePolynomial.from_degrees([1, 2, 2, 5])
    assert p.coefficients == (0, 1, 2, 0, 0, 1)
    assert p.degree == 5 and p.low_degree == 1 and p.value_at_one() == 4
    assert p.degrees() == [1, 2, 2, 5]
    assert p[9] == 0
    with pytest.raises(SeriesError):
        DegreePolynomial([Fraction(1, 2)])


series = st.lists(st.integers(-5, 5), min_size=6, max_size=6).map(TruncatedSeries)


@settings(max_examples=60, deadline=None)
@given(series, series, series)
def test_series_ring_laws(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(0, 4), st.integers(0, 12))
def test_geometric_factor_inverts(a, b, bound):
    prod = geometric_factor(a, b, bound) * one_minus_power(a, b, bound)
    assert ints(prod) == [1] + [0] * bound


@settings(max_examples=40, deadline=None)
@given(series, series)
def test_dominance_reflexive_antisymmetric(a, b):
    assert dominates(a, a).dominated
    if a != b:
        assert not (dominates(a, b).dominated and dominates(b, a).dominated)
