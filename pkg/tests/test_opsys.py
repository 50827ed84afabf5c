from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace

import pytest
from mpmath import mp

from classes.errors import InvalidSystemError, PrecisionExhaustedError
from classes.jacobi import JacobiParams, jacobi_system
from classes.opsys import (
    OrthoSystem,
    gauss_rule,
    gram_schmidt_oracle,
    inner_mu,
    monic_deriv_at,
    monic_poly,
    moments,
    norm_sq,
)
from classes.polycore import Poly, coeff_distance, poly_derivative, poly_eval

TIGHT = mp.mpf(10) ** -60


@pytest.fixture
def legendre():
    return jacobi_system(JacobiParams(0, 0))


def test_legendre_polynomials(legendre):
    assert monic_poly(legendre, 1) == Poly((0, 1))
    p2 = monic_poly(legendre, 2)
    assert coeff_distance(p2, Poly((mp.mpf(-1) / 3, 0, 1))) < TIGHT


def test_first_step_uses_beta0():
    p1 = monic_poly(jacobi_system(JacobiParams(0, 2)), 1)
    assert p1 == Poly((mp.mpf(-1) / 2, 1))


def test_chebyshev_cancelled_coefficients():
    cheb = jacobi_system(JacobiParams("-0.5", "-0.5"))
    assert cheb.beta(0) == 0
    assert abs(cheb.gamma(1) - mp.mpf("0.5")) < TIGHT
    assert abs(cheb.gamma(4) - mp.mpf("0.25")) < TIGHT
    assert abs(cheb.mu0 - mp.pi) < TIGHT


def test_norms(legendre):
    assert norm_sq(legendre, 0) == 2
    assert abs(norm_sq(legendre, 1) - mp.mpf(2) / 3) < TIGHT
    assert abs(norm_sq(legendre, 2) - mp.mpf(8) / 45) < TIGHT
    with pytest.raises(ValueError):
        norm_sq(legendre, -1)


def test_gauss_rule_three_points(legendre):
    rule = gauss_rule(legendre, 3)
    r = mp.sqrt(mp.mpf(3) / 5)
    for got, want in zip(rule.nodes, (-r, 0, r)):
        assert abs(got - want) < TIGHT
    for got, want in zip(rule.weights, (mp.mpf(5) / 9, mp.mpf(8) / 9, mp.mpf(5) / 9)):
        assert abs(got - want) < TIGHT
    assert abs(rule.integrate(lambda x: x**4) - mp.mpf(2) / 5) < TIGHT


def test_one_point_rule(legendre):
    rule = gauss_rule(legendre, 1)
    assert rule.nodes == (0,)
    assert rule.weights == (2,)


def test_inner_product_and_moments(legendre):
    x2 = Poly.monomial(2)
    assert abs(inner_mu(legendre, x2, x2) - mp.mpf(2) / 5) < TIGHT
    assert inner_mu(legendre, x2, Poly()) == 0
    want = [2, 0, mp.mpf(2) / 3, 0, mp.mpf(2) / 5]
    for got, w in zip(moments(legendre, 5), want):
        assert abs(got - w) < TIGHT


def test_gram_schmidt_matches_recurrence():
    sys = jacobi_system(JacobiParams("0.5", "2.5"))
    oracle = gram_schmidt_oracle(lambda p, q: inner_mu(sys, p, q), 8)
    for n, p in enumerate(oracle):
        assert coeff_distance(monic_poly(sys, n), p) < mp.mpf(10) ** -40


def test_gram_schmidt_detects_degenerate_product():
    def point_product(p, q):
        return poly_eval(p, 0) * poly_eval(q, 0)

    with pytest.raises(PrecisionExhaustedError):
        gram_schmidt_oracle(point_product, 2)


def test_endpoint_derivatives_agree_with_expansion():
    sys = jacobi_system(JacobiParams("0.5", "2.5"))
    for k in range(4):
        closed = monic_deriv_at(sys, 6, k, -1)
        direct = poly_eval(poly_derivative(monic_poly(sys, 6), k), -1)
        assert abs(closed - direct) <= mp.mpf(10) ** -50 * (1 + abs(direct))
    assert monic_deriv_at(sys, -1, 0, -1) == 0


def test_invalid_systems():
    with pytest.raises(InvalidSystemError):
        OrthoSystem(beta=lambda n: 0, gamma=lambda n: 1, mu0=0)
    bad = OrthoSystem(beta=lambda n: 0, gamma=lambda n: -1, mu0=1, label="bad")
    with pytest.raises(InvalidSystemError):
        gauss_rule(bad, 4)


def test_systems_are_shared_per_precision():
    p = JacobiParams(1, 2)
    assert jacobi_system(p) is jacobi_system(JacobiParams(1, 2))


def test_concurrent_cache_fill_matches_serial():
    serial = replace(jacobi_system(JacobiParams(1, 2)), _cache={})
    shared = replace(serial, _cache={})
    degrees = [9, 3, 14, 7, 12, 1, 14, 5] * 4
    with ThreadPoolExecutor(max_workers=8) as pool:
        polys = list(pool.map(lambda n: monic_poly(shared, n), degrees))
        norms = list(pool.map(lambda n: norm_sq(shared, n), degrees))
    assert polys == [monic_poly(serial, n) for n in degrees]
    assert norms == [norm_sq(serial, n) for n in degrees]
    assert len(shared.cached("polys", list)) == 15
