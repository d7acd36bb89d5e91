import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thomcalc.core.errors import NotInvertible, UsageError
from thomcalc.core.ring import Series, series_invert
from thomcalc.core.spaces import projective_space


def test_invert_one_plus_square():
    """(1 + u^2)^-1 = 1 - u^2 + u^4 - u^6 over F_3, to order 6."""
    s = Series.from_terms({0: 1, 2: 1}, 3, 6)
    inverse = series_invert(s)
    assert inverse.coefficients == (1, 0, 2, 0, 1, 0, 2)
    assert str(inverse) == "1 + 2*u^2 + u^4 + 2*u^6"
    assert s * inverse == Series.one(3, 6)


def test_zero_constant_term_is_not_invertible():
    with pytest.raises(NotInvertible):
        series_invert(Series([0, 1], 5, 4))


def test_truncation_order():
    s = Series([1, 1], 5, 3)
    assert s.order == 3
    assert (s ** 4).coefficients == (1, 4, 1, 4)
    assert (s * Series([1, 1], 5, 1)).order == 1
    assert s.truncate(1) == Series([1, 1], 5, 1)
    assert Series([1, 2, 3], 5, 1).coefficients == (1, 2)


def test_divide_by_variable():
    s = Series.from_terms({1: 1, 3: 1}, 3, 5)
    assert s.divide_by_variable() == Series.from_terms({0: 1, 2: 1}, 3, 4)
    with pytest.raises(UsageError):
        Series.one(3, 4).divide_by_variable()


def test_agrees_with_ignores_higher_orders():
    assert Series([1, 2], 5, 1).agrees_with(Series([1, 2, 3], 5, 2))
    assert not Series([1, 2], 5, 1).agrees_with(Series([1, 3], 5, 4))


def test_series_of_different_primes_do_not_mix():
    with pytest.raises(UsageError):
        Series.one(3, 2) + Series.one(5, 2)


def test_evaluate_in_ring():
    ring = projective_space(2, 3).ring
    u = ring.gen("u")
    s = Series.from_terms({0: 1, 1: 2, 2: 1, 5: 1}, 3, 6)
    assert s.evaluate(u) == ring.one() + u.scale(2) + u ** 2


def test_negative_power_is_inverse():
    s = Series([1, 1], 7, 5)
    assert s ** -2 == series_invert(s * s)


@settings(max_examples=50, deadline=None)
@given(
    st.sampled_from([2, 3, 5, 7]),
    st.lists(st.integers(min_value=0, max_value=50), min_size=1, max_size=8),
)
def test_inverse_is_two_sided(prime, coefficients):
    s = Series(coefficients, prime, 7)
    if s.constant_term() == 0:
        with pytest.raises(NotInvertible):
            series_invert(s)
        return
    inverse = series_invert(s)
    assert s * inverse == Series.one(prime, 7)
    assert series_invert(inverse) == s
