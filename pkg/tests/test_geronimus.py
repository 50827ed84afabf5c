import pytest
from mpmath import mp

from classes.errors import DomainError
from classes.geronimus import (
    CLOSED_FORM,
    PROJECTION,
    base_to_gg_connection,
    gg_deriv_at,
    gg_five_term,
    gg_inner,
    gg_norm_sq,
    gg_poly,
    gg_three_term,
    make_generic_gg,
    make_jacobi_gg,
    project_onto_gg,
)
from classes.jacobi import JacobiParams, jacobi_system
from classes.opsys import inner_mu, monic_poly
from classes.polycore import (
    Poly,
    coeff_distance,
    poly_combination,
    poly_derivative,
    poly_eval,
    poly_shift_square,
)

TIGHT = mp.mpf(10) ** -50


def close(a, b, tol=TIGHT):
    return abs(a - b) <= tol * (1 + abs(b))


@pytest.fixture
def g02():
    return make_jacobi_gg(JacobiParams(0, 2))


@pytest.fixture
def g():
    return make_jacobi_gg(JacobiParams("0.5", "2.5"))


def test_gg_polynomials_of_the_02_instance_are_legendre(g02):
    legendre = jacobi_system(JacobiParams(0, 0))
    for n in range(6):
        assert coeff_distance(gg_poly(g02, n), monic_poly(legendre, n)) < TIGHT
    assert gg_poly(g02, -1).is_zero()


def test_gg_norm_anchor(g02):
    assert close(gg_norm_sq(g02, 2), mp.mpf(8) / 45)
    p = gg_poly(g02, 1)
    assert close(gg_norm_sq(g02, 1), gg_inner(g02, p, p))


def test_connection_anchor(g02):
    c = base_to_gg_connection(g02, 0)
    rhs = poly_combination(
        [(1, gg_poly(g02, 2)), (c.s_pp1, gg_poly(g02, 1)), (c.s_p0, gg_poly(g02, 0))]
    )
    assert coeff_distance(rhs, Poly((1, 2, 1))) < TIGHT
    assert c.provenance == CLOSED_FORM


def test_three_term_reproduces_shifted_jacobi(g):
    shifted = jacobi_system(JacobiParams("0.5", "0.5"))
    for n in range(12):
        c = gg_three_term(g, n)
        assert close(c.sigma_nn + g.a, shifted.beta(n))
        if n >= 1:
            assert close(c.sigma_nm1, shifted.gamma(n))
    assert gg_three_term(g, 2).provenance == PROJECTION
    assert gg_three_term(g, 3).provenance == CLOSED_FORM


@pytest.mark.parametrize("n", [4, 5, 9])
def test_five_term_closed_form_matches_projection(g, n):
    c = gg_five_term(g, n)
    assert c.provenance == CLOSED_FORM
    proj = project_onto_gg(g, poly_shift_square(gg_poly(g, n), g.a), n + 1)
    for got, want in zip((c.a_m2, c.a_m1, c.a_p0, c.a_pp1), proj[n - 2 :]):
        assert close(got, want)
    assert all(abs(v) < TIGHT for v in proj[: n - 2])


def test_five_term_small_degrees_use_projection(g):
    c = gg_five_term(g, 1)
    assert c.provenance == PROJECTION
    assert c.a_m2 == 0


@pytest.mark.parametrize("n", [2, 3, 8])
def test_connection_closed_form_matches_projection(g, n):
    c = base_to_gg_connection(g, n)
    proj = project_onto_gg(g, poly_shift_square(monic_poly(g.base, n), g.a), n + 1)
    assert close(c.s_pp1, proj[n + 1])
    assert close(c.s_p0, proj[n])


def test_measure_relation(g):
    p, q = Poly((1, -2, 0, 3)), Poly((0, 1, 1))
    assert close(gg_inner(g, poly_shift_square(p, g.a), q), inner_mu(g.base, p, q))


def test_endpoint_values_of_gg_polynomials(g):
    for n in range(6):
        for j in range(3):
            direct = poly_eval(poly_derivative(gg_poly(g, n), j), -1)
            assert close(gg_deriv_at(g, n, j, -1), direct)


def test_generic_construction_agrees_with_jacobi(g):
    p = JacobiParams("0.5", "2.5")
    generic = make_generic_gg(jacobi_system(p), jacobi_system(p.shifted()), -1)
    assert generic.params is None
    for n in range(7):
        assert close(generic.B(n), g.B(n))
        assert close(generic.C(n), g.C(n))
    for n in range(2):
        c = base_to_gg_connection(generic, n)
        assert c.provenance == PROJECTION
        want = base_to_gg_connection(g, n)
        assert close(c.s_pp1, want.s_pp1)
        assert close(c.s_p0, want.s_p0)


def test_domain_checks():
    with pytest.raises(DomainError, match="beta>1"):
        make_jacobi_gg(JacobiParams(0, "0.5"))
    sys = jacobi_system(JacobiParams(0, 0))
    with pytest.raises(DomainError):
        make_generic_gg(sys, sys, 0)
    g = make_jacobi_gg(JacobiParams(0, 2))
    with pytest.raises(DomainError):
        gg_three_term(g, -1)
    with pytest.raises(DomainError):
        gg_five_term(g, -1)
    with pytest.raises(DomainError):
        base_to_gg_connection(g, -1)
