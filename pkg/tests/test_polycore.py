import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp

from classes.polycore import (
    ZERO,
    ZERO_DEGREE,
    Poly,
    chebyshev_points,
    coeff_distance,
    poly_add,
    poly_combination,
    poly_derivative,
    poly_eval,
    poly_mul,
    poly_shift_square,
    pointwise_residual,
    tolerance,
    working_precision,
)

small_coeffs = st.lists(st.integers(min_value=-50, max_value=50), max_size=8)
small_x = st.integers(min_value=-5, max_value=5)


def test_trailing_zeros_are_stripped():
    p = Poly((1, 2, 0, 0))
    assert p.degree == 1
    assert p.leading == 2
    assert Poly((0, 0)).is_zero()
    assert ZERO.degree == ZERO_DEGREE


def test_horner_evaluation():
    p = Poly((1, 2, 3))
    assert poly_eval(p, 2) == 17
    assert p(-1) == 2
    assert Poly.monomial(3)(2) == 8


def test_derivatives():
    p = Poly((1, 2, 3))
    assert poly_derivative(p) == Poly((2, 6))
    assert poly_derivative(p, 2) == Poly.constant(6)
    assert poly_derivative(p, 5).is_zero()
    with pytest.raises(ValueError):
        poly_derivative(p, -1)


@given(small_coeffs, small_coeffs, small_x)
@settings(max_examples=200)
def test_product_evaluates_pointwise(a, b, x):
    p, q = Poly(tuple(a)), Poly(tuple(b))
    assert poly_eval(poly_mul(p, q), x) == poly_eval(p, x) * poly_eval(q, x)


@given(small_coeffs, small_coeffs, small_x)
@settings(max_examples=200)
def test_sum_evaluates_pointwise(a, b, x):
    p, q = Poly(tuple(a)), Poly(tuple(b))
    assert poly_eval(poly_add(p, q), x) == poly_eval(p, x) + poly_eval(q, x)


@given(small_coeffs, st.integers(min_value=-3, max_value=3), small_x)
@settings(max_examples=200)
def test_shift_square(a, shift, x):
    p = Poly(tuple(a))
    assert poly_eval(poly_shift_square(p, shift), x) == (x - shift) ** 2 * poly_eval(p, x)


def test_combination_and_distance():
    p = poly_combination([(2, Poly((1, 1))), (-1, Poly((0, 2)))])
    assert p == Poly.constant(2)
    assert coeff_distance(p, p) == 0
    assert coeff_distance(Poly((1, 0, 1)), Poly((0, 0, 2))) == mp.mpf("0.5")


def test_working_precision_is_scoped():
    with working_precision(128):
        assert mp.prec == 128
        assert tolerance() == mp.ldexp(1, -64)
    assert mp.prec == 256
    assert tolerance() == mp.ldexp(1, -128)


def test_working_precision_rejects_low_bits():
    with pytest.raises(ValueError):
        with working_precision(32):
            pass


def test_chebyshev_points():
    pts = chebyshev_points(11)
    assert len(pts) == 11
    assert all(a < b for a, b in zip(pts, pts[1:]))
    assert all(-1 < x < 1 for x in pts)
    assert abs(pts[5]) < mp.mpf(10) ** -70


def test_pointwise_residual_is_relative():
    pts = [mp.mpf(0), mp.mpf(1)]
    assert pointwise_residual(Poly((1,)), Poly((1,)), pts) == 0
    assert pointwise_residual(Poly((1,)), Poly((2,)), pts) == mp.mpf("0.5")
