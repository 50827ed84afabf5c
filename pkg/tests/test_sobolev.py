import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp

from analytics.asymptotics import derivative_ratio_scan, norm_ratio_scan
from classes.errors import DomainError, PrecisionExhaustedError
from classes.geronimus import CLOSED_FORM, PROJECTION, make_jacobi_gg, project_onto_gg
from classes.jacobi import JacobiParams, jacobi_system
from classes.opsys import gram_schmidt_oracle, inner_mu, monic_deriv_at, monic_poly, norm_sq
from classes.polycore import (
    Poly,
    ZERO,
    chebyshev_points,
    coeff_distance,
    poly_axpy,
    poly_derivative,
    poly_eval,
    poly_shift_square,
    pointwise_residual,
)
from classes.sobolev import (
    SobolevParams,
    SobolevSystem,
    kernel_poly,
    kernel_value,
    q_deriv_at_a,
    q_endpoint,
    q_norm_sq,
    q_poly,
    q_poly_determinant,
    qq_connection,
    qq_residual_poly,
    sobolev_inner,
    solve_endpoint_system,
)

TIGHT = mp.mpf(10) ** -45
PARAMS = JacobiParams("0.5", "2.5")


def close(a, b, tol=TIGHT):
    return abs(a - b) <= tol * (1 + abs(b))


def sobolev(M=1, N=1, a=-1, p=PARAMS):
    return SobolevSystem(jacobi_system(p), SobolevParams(M, N, a))


def test_parameter_checks():
    with pytest.raises(DomainError):
        SobolevParams(-1, 0, -1)
    with pytest.raises(DomainError):
        SobolevParams(0, "-0.5", -1)
    with pytest.raises(DomainError):
        sobolev(a="0.2")


def test_unperturbed_product_gives_base_family():
    ss = sobolev(0, 0)
    for n in range(6):
        assert coeff_distance(q_poly(ss, n), monic_poly(ss.base, n)) < TIGHT
        assert q_endpoint(ss, n).denom == 1


@pytest.mark.parametrize("a", [-1, "1.5"])
def test_sobolev_orthogonality(a):
    ss = sobolev(1, 1, a)
    for n in range(1, 8):
        q = q_poly(ss, n)
        assert q.degree == n and q.leading == 1
        for m in range(n):
            assert abs(sobolev_inner(ss, q, Poly.monomial(m))) < TIGHT


@pytest.mark.parametrize("a", [-1, "-2"])
def test_oracle_agrees_with_kernel_construction(a):
    ss = sobolev(2, "0.5", a)
    oracle = gram_schmidt_oracle(lambda p, q: sobolev_inner(ss, p, q), 8)
    for n, p in enumerate(oracle):
        assert coeff_distance(q_poly(ss, n), p) < mp.mpf(10) ** -35


def test_determinant_form():
    ss = sobolev(3, 2)
    for n in range(8):
        assert coeff_distance(q_poly_determinant(ss, n), q_poly(ss, n)) < TIGHT


def test_norms_and_derivatives():
    ss = sobolev()
    for n in range(7):
        q = q_poly(ss, n)
        assert close(q_norm_sq(ss, n), sobolev_inner(ss, q, q))
        for j in range(4):
            assert close(q_deriv_at_a(ss, n, j), poly_eval(poly_derivative(q, j), ss.a))
    with pytest.raises(DomainError):
        q_deriv_at_a(ss, 3, -1)


def test_mixed_kernels_are_symmetric():
    ss = sobolev()
    for n in range(1, 8):
        assert close(kernel_value(ss, n, 1, 0).value, kernel_value(ss, n, 0, 1).value)


@given(
    st.lists(st.integers(min_value=-9, max_value=9), min_size=1, max_size=7),
    st.sampled_from([0, 1]),
    st.sampled_from(["-1", "1.5"]),
)
@settings(max_examples=40, deadline=None)
def test_kernel_reproduces_values_at_a(coeffs, s, a):
    base = jacobi_system(PARAMS)
    p = Poly(tuple(coeffs))
    a = mp.mpf(a)
    got = inner_mu(base, kernel_poly(base, 6, s, a), p)
    assert close(got, poly_eval(poly_derivative(p, s), a), mp.mpf(10) ** -40)


def test_kernels_do_not_depend_on_normalization():
    ss = sobolev()
    base, a, n = ss.base, ss.a, 6
    scale = [(-1) ** i * mp.mpf(i + 2) / 3 for i in range(n + 1)]
    for s in (0, 1):
        rescaled = ZERO
        for i, c in enumerate(scale):
            # R_i = c P_i contributes R_i(x) R_i^(s)(a) / ||R_i||^2
            weight = c * (c * monic_deriv_at(base, i, s, a)) / (c**2 * norm_sq(base, i))
            rescaled = poly_axpy(weight, monic_poly(base, i), rescaled)
        assert coeff_distance(rescaled, kernel_poly(base, n, s, a)) < TIGHT
        assert close(poly_eval(rescaled, a), kernel_value(ss, n + 1, 0, s).value)


def test_scaled_endpoint_scans_match_monic_construction():
    p = JacobiParams(0, 1)
    ss = sobolev(p=p)
    ns = [16, 23]
    deriv = derivative_ratio_scan(p, ss.params, 2, ns)
    ratio = norm_ratio_scan(p, ss.params, ns)
    tol = mp.mpf(10) ** -40
    for n, d_row, r_row in zip(ns, deriv.rows, ratio.rows):
        assert close(d_row.value, q_deriv_at_a(ss, n, 2) / monic_deriv_at(ss.base, n, 2, -1), tol)
        assert close(r_row.value, mp.sqrt(q_norm_sq(ss, n) / norm_sq(ss.base, n)), tol)


def test_endpoint_solve_matches_q_endpoint():
    ss = sobolev(2, "0.5")
    n = 5
    k = {(i, j): kernel_value(ss, n, i, j).value for i in (0, 1) for j in (0, 1)}
    p_a = monic_deriv_at(ss.base, n, 0, ss.a)
    dp_a = monic_deriv_at(ss.base, n, 1, ss.a)
    got = solve_endpoint_system(ss.M, ss.N, k[0, 0], k[0, 1], k[1, 0], k[1, 1], p_a, dp_a)
    want = q_endpoint(ss, n)
    assert close(got.q_at_a, want.q_at_a)
    assert close(got.dq_at_a, want.dq_at_a)
    assert close(got.denom, want.denom)


def test_endpoint_solve_rejects_singular_system():
    one, zero = mp.mpf(1), mp.mpf(0)
    with pytest.raises(PrecisionExhaustedError):
        solve_endpoint_system(one, one, -one, zero, zero, zero, one, one)


@pytest.mark.parametrize("n", range(0, 8))
def test_full_qq_expansion(n):
    ss = sobolev()
    g = make_jacobi_gg(PARAMS)
    conn = qq_connection(ss, g, n)
    lhs, rhs = qq_residual_poly(ss, g, n, conn)
    assert pointwise_residual(lhs, rhs, chebyshev_points(11)) < TIGHT
    assert conn.provenance == (PROJECTION if n < 4 else CLOSED_FORM)
    assert len(conn.coefficients(n)) == n + 2


def test_closed_form_named_coefficients_match_projection():
    ss = sobolev(1, 1)
    g = make_jacobi_gg(PARAMS)
    n = 6
    conn = qq_connection(ss, g, n)
    proj = project_onto_gg(g, poly_shift_square(q_poly(ss, n), ss.a), n + 1)
    for got, want in zip(conn.coefficients(n), proj):
        assert close(got, want)


def test_lower_tail_needs_masses():
    g = make_jacobi_gg(PARAMS)
    assert any(abs(c) > mp.mpf("1e-10") for c in qq_connection(sobolev(1, 1), g, 6).lower)
    assert all(c == 0 for c in qq_connection(sobolev(0, 0), g, 6).lower)


def test_qq_connection_requires_shared_base():
    g = make_jacobi_gg(JacobiParams(0, 2))
    with pytest.raises(DomainError):
        qq_connection(sobolev(), g, 4)
    with pytest.raises(DomainError):
        qq_connection(sobolev(), make_jacobi_gg(PARAMS), -1)
