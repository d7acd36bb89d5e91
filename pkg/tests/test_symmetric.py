import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Mul, Poly, symbols
from sympy.polys.polyfuncs import symmetrize

from thomcalc.core.symmetric import (
    elementary_product,
    leading_exponents,
    partitions_with_parts,
    reduce_to_elementary,
)


def test_partitions_are_descending():
    assert partitions_with_parts(4, 2) == ((4,), (3, 1), (2, 2))
    assert partitions_with_parts(0, 3) == ((),)
    assert partitions_with_parts(3, 0) == ()


def test_leading_exponents():
    assert leading_exponents((2, 2), 2) == (0, 2)
    assert leading_exponents((3, 1), 3) == (2, 1, 0)


def test_power_sum_in_two_roots():
    """t1^2 + t2^2 = e1^2 - 2 e2."""
    result = reduce_to_elementary(2, 2, lambda lam: 1 if lam == (2,) else 0, 5)
    assert result == {(2, 0): 1, (0, 1): 3}


def test_no_division_in_characteristic_two():
    """t1 t2 (t1 + t2) = e1 e2 holds over F_2 as well."""
    result = reduce_to_elementary(2, 3, lambda lam: 1 if lam == (2, 1) else 0, 2)
    assert result == {(1, 1): 1}


def test_rank_zero():
    assert reduce_to_elementary(0, 4, lambda lam: 1, 3) == {(): 1}
    assert reduce_to_elementary(0, 4, lambda lam: 0, 3) == {}


@settings(max_examples=30, deadline=None)
@given(
    st.integers(min_value=1, max_value=3),
    st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)),
    st.sampled_from([2, 3, 5]),
)
def test_elementary_products_reduce_to_themselves(rank, exponents, prime):
    exps = exponents[:rank]
    product = elementary_product(rank, exps, prime)
    degree = sum((i + 1) * e for i, e in enumerate(exps))
    result = reduce_to_elementary(rank, degree, lambda lam: product.get(lam, 0), prime)
    assert result == {exps: 1}


@pytest.mark.parametrize("prime", [2, 3, 5])
def test_reduction_matches_symmetrize(prime):
    t = symbols("t1:4")
    f = (t[0] + t[1] + t[2]) ** 3 + 2 * (t[0] ** 2 * t[1] ** 2 + t[0] ** 2 * t[2] ** 2 + t[1] ** 2 * t[2] ** 2) \
        + t[0] * t[1] * t[2]
    poly = Poly(f, *t)

    def coefficient(lam):
        exps = tuple(lam) + (0,) * (3 - len(lam))
        return int(poly.coeff_monomial(Mul(*[v ** e for v, e in zip(t, exps)])))

    symmetric, remainder, defs = symmetrize(f, formal=True)
    assert remainder == 0
    expected_poly = Poly(symmetric, *[s for s, _ in defs])
    expected = {monom: int(c) % prime for monom, c in expected_poly.terms() if int(c) % prime}
    assert reduce_to_elementary(3, 4, coefficient, prime) == expected
