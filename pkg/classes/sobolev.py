#!/usr/bin/env python3
"""Sobolev-type orthogonal polynomials with mass points at ``a``.

The inner product is

    <p, q>_S = <p, q>_0 + M p(a) q(a) + N p'(a) q'(a)

and its monic orthogonal polynomials are obtained from the base family
through Christoffel-Darboux kernels:

    Q_n(x) = P_n(x) - M Q_n(a) K_{n-1}(x, a) - N Q_n'(a) K_{n-1}^{(0,1)}(x, a)

with ``Q_n(a)`` and ``Q_n'(a)`` solved from a 2x2 system by Cramer's rule.

Kernel and endpoint caches are written under the system's lock; see
``classes.opsys`` for what that does and does not make thread-safe.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from mpmath import mp

from logging_utils import get_logger

from .errors import DomainError, PrecisionExhaustedError
from .geronimus import (
    CLOSED_FORM,
    PROJECTION,
    GGSystem,
    gg_deriv_at,
    gg_norm_sq,
    gg_poly,
    project_onto_gg,
)
from .opsys import OrthoSystem, inner_mu, monic_deriv_at, monic_poly, norm_sq
from .polycore import (
    Poly,
    Real,
    ZERO,
    poly_axpy,
    poly_derivative,
    poly_eval,
    poly_scale,
    poly_shift_square,
    to_real,
    tolerance,
)

logger = get_logger(__name__)


@dataclass(frozen=True)
class SobolevParams:
    """Masses ``M``, ``N`` (both non-negative) at the point ``a``."""

    M: Real
    N: Real
    a: Real

    def __post_init__(self) -> None:
        for name in ("M", "N", "a"):
            object.__setattr__(self, name, to_real(getattr(self, name)))
        if self.M < 0 or self.N < 0:
            raise DomainError(f"M >= 0 and N >= 0 required, got M={self.M}, N={self.N}")


@dataclass(frozen=True)
class KernelValue:
    n: int
    k: int
    s: int
    value: Real


@dataclass(frozen=True)
class QEndpointData:
    """``Q_n(a)``, ``Q_n'(a)`` and the shared Cramer determinant."""

    q_at_a: Real
    dq_at_a: Real
    denom: Real


@dataclass(frozen=True)
class QQConnection:
    """Expansion of ``(x-a)^2 Q_n`` in the gg basis.

    The four named coefficients sit on ``P^gg_{n+1} .. P^gg_{n-2}``;
    ``lower`` holds the coefficients on ``P^gg_0 .. P^gg_{n-3}``, which
    vanish only when ``M = N = 0``.
    """

    a_pp1: Real
    a_p0: Real
    a_m1: Real
    a_m2: Real
    lower: tuple = ()
    provenance: str = CLOSED_FORM

    def coefficients(self, n: int) -> list[Real]:
        """All coefficients on ``P^gg_0 .. P^gg_{n+1}``, lowest first."""
        named = [self.a_m2, self.a_m1, self.a_p0, self.a_pp1]
        return list(self.lower) + named[max(0, 2 - n):]


@dataclass(frozen=True)
class SobolevSystem:
    """Sobolev inner product built over a base orthogonal system."""

    base: OrthoSystem
    params: SobolevParams
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)
    _lock: threading.RLock = field(
        default_factory=threading.RLock, compare=False, hash=False, repr=False
    )

    def __post_init__(self) -> None:
        lo, hi = (to_real(v) for v in self.base.support)
        if lo < self.params.a < hi:
            raise DomainError(
                f"a={self.params.a} lies inside the support of {self.base.label}"
            )

    @property
    def M(self) -> Real:
        return self.params.M

    @property
    def N(self) -> Real:
        return self.params.N

    @property
    def a(self) -> Real:
        return self.params.a


# ----------------------------------------------------------------------
# kernels
# ----------------------------------------------------------------------
def cd_kernel_deriv(sys: OrthoSystem, n: int, k: int, s: int, x, y) -> Real:
    """``K_n^{(k,s)}(x, y) = sum_{i<=n} P_i^{(k)}(x) P_i^{(s)}(y) / ||P_i||^2``.

    ``K_{-1}`` is identically zero.
    """
    if k < 0 or s < 0:
        raise DomainError(f"derivative orders must be non-negative, got k={k}, s={s}")
    return mp.fsum(
        monic_deriv_at(sys, i, k, x) * monic_deriv_at(sys, i, s, y) / norm_sq(sys, i)
        for i in range(n + 1)
    )


def kernel_value(ss: SobolevSystem, n: int, k: int, s: int) -> KernelValue:
    """``K_{n-1}^{(k,s)}(a, a)``, cached on the Sobolev system."""
    key = ("kernel", mp.prec, n, k, s)
    hit = ss._cache.get(key)
    if hit is not None:
        return hit
    value = KernelValue(n, k, s, cd_kernel_deriv(ss.base, n - 1, k, s, ss.a, ss.a))
    with ss._lock:
        return ss._cache.setdefault(key, value)


def kernel_poly(sys: OrthoSystem, n: int, s: int, y) -> Poly:
    """``x -> K_n^{(0,s)}(x, y)`` as an explicit polynomial."""
    acc = ZERO
    for i in range(n + 1):
        c = monic_deriv_at(sys, i, s, y) / norm_sq(sys, i)
        acc = poly_axpy(c, monic_poly(sys, i), acc)
    return acc


# ----------------------------------------------------------------------
# Q_n
# ----------------------------------------------------------------------
def solve_endpoint_system(M, N, k00, k01, k10, k11, p_a, dp_a) -> QEndpointData:
    """Cramer solve of

        (1 + M k00) q + N k01 dq = p_a
        M k10 q + (1 + N k11) dq = dp_a

    for ``q = Q_n(a)`` and ``dq = Q_n'(a)``. Kernel values do not depend on how
    the base family is normalized, so scaled Jacobi tables can be passed in.
    """
    denom = (1 + M * k00) * (1 + N * k11) - M * N * k10 * k01
    if denom <= 0:
        raise PrecisionExhaustedError(f"Cramer determinant {mp.nstr(denom, 10)} is not positive")
    q = (p_a * (1 + N * k11) - N * k01 * dp_a) / denom
    dq = ((1 + M * k00) * dp_a - M * k10 * p_a) / denom
    return QEndpointData(q, dq, denom)


def q_endpoint(ss: SobolevSystem, n: int) -> QEndpointData:
    """Solve for ``Q_n(a)`` and ``Q_n'(a)`` with explicit Cramer determinants."""
    if n < 0:
        raise DomainError(f"degree must be non-negative, got {n}")
    key = ("endpoint", mp.prec, n)
    hit = ss._cache.get(key)
    if hit is not None:
        return hit

    M, N, a = ss.M, ss.N, ss.a
    k00 = kernel_value(ss, n, 0, 0).value
    k01 = kernel_value(ss, n, 0, 1).value
    k10 = kernel_value(ss, n, 1, 0).value
    k11 = kernel_value(ss, n, 1, 1).value
    if abs(k10 - k01) > tolerance() * (1 + abs(k01)):
        raise PrecisionExhaustedError(f"K^(1,0) != K^(0,1) at n={n}")

    p_a = monic_deriv_at(ss.base, n, 0, a)
    dp_a = monic_deriv_at(ss.base, n, 1, a)
    try:
        out = solve_endpoint_system(M, N, k00, k01, k10, k11, p_a, dp_a)
    except PrecisionExhaustedError as exc:
        raise PrecisionExhaustedError(f"{exc} at n={n}") from exc
    with ss._lock:
        return ss._cache.setdefault(key, out)


def q_poly(ss: SobolevSystem, n: int) -> Poly:
    """Monic ``Q_n`` from the kernel representation."""
    end = q_endpoint(ss, n)
    out = monic_poly(ss.base, n)
    if n == 0:
        return out
    out = poly_axpy(-ss.M * end.q_at_a, kernel_poly(ss.base, n - 1, 0, ss.a), out)
    return poly_axpy(-ss.N * end.dq_at_a, kernel_poly(ss.base, n - 1, 1, ss.a), out)


def q_poly_determinant(ss: SobolevSystem, n: int) -> Poly:
    """``Q_n`` as a 3x3 determinant over the Cramer denominator.

    First row ``P_n(x), M K(x,a), N K^(0,1)(x,a)``, then the two endpoint
    rows; expanded by cofactors along the polynomial row.
    """
    M, N, a = ss.M, ss.N, ss.a
    base = ss.base
    p_x = monic_poly(base, n)
    if n == 0:
        return p_x
    k_x = poly_scale(M, kernel_poly(base, n - 1, 0, a))
    k1_x = poly_scale(N, kernel_poly(base, n - 1, 1, a))
    k00 = kernel_value(ss, n, 0, 0).value
    k01 = kernel_value(ss, n, 0, 1).value
    k10 = kernel_value(ss, n, 1, 0).value
    k11 = kernel_value(ss, n, 1, 1).value
    p_a = monic_deriv_at(base, n, 0, a)
    dp_a = monic_deriv_at(base, n, 1, a)

    rows = [
        [1 + M * k00, N * k01],
        [M * k10, 1 + N * k11],
    ]
    minor0 = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    minor1 = p_a * rows[1][1] - rows[0][1] * dp_a
    minor2 = p_a * rows[1][0] - rows[0][0] * dp_a
    det = poly_scale(minor0, p_x)
    det = poly_axpy(-minor1, k_x, det)
    det = poly_axpy(minor2, k1_x, det)
    return poly_scale(1 / minor0, det)


def q_deriv_at_a(ss: SobolevSystem, n: int, j: int) -> Real:
    """``Q_n^{(j)}(a)`` from kernel values, without expanding ``Q_n``."""
    if j < 0:
        raise DomainError(f"derivative order must be non-negative, got {j}")
    end = q_endpoint(ss, n)
    if j == 0:
        return end.q_at_a
    if j == 1:
        return end.dq_at_a
    p_j = monic_deriv_at(ss.base, n, j, ss.a)
    return (
        p_j
        - ss.M * end.q_at_a * kernel_value(ss, n, j, 0).value
        - ss.N * end.dq_at_a * kernel_value(ss, n, j, 1).value
    )


# ----------------------------------------------------------------------
# inner products and norms
# ----------------------------------------------------------------------
def sobolev_inner(ss: SobolevSystem, p: Poly, q: Poly) -> Real:
    a = ss.a
    out = inner_mu(ss.base, p, q)
    if ss.M:
        out += ss.M * poly_eval(p, a) * poly_eval(q, a)
    if ss.N:
        out += ss.N * poly_eval(poly_derivative(p), a) * poly_eval(poly_derivative(q), a)
    return out


def q_norm_sq(ss: SobolevSystem, n: int) -> Real:
    """``||Q_n||_S^2 = ||P_n||^2 + M Q_n(a) P_n(a) + N Q_n'(a) P_n'(a)``."""
    end = q_endpoint(ss, n)
    p_a = monic_deriv_at(ss.base, n, 0, ss.a)
    dp_a = monic_deriv_at(ss.base, n, 1, ss.a)
    return norm_sq(ss.base, n) + ss.M * end.q_at_a * p_a + ss.N * end.dq_at_a * dp_a


# ----------------------------------------------------------------------
# connection to the gg basis
# ----------------------------------------------------------------------
def _q_mu_inner(ss: SobolevSystem, n: int, m: int) -> Real:
    """``<Q_n, P_m>_0``; for ``m < n`` only the mass terms remain."""
    if m > n or m < 0:
        return mp.mpf(0)
    if m == n:
        return norm_sq(ss.base, n)
    end = q_endpoint(ss, n)
    return -(
        ss.M * end.q_at_a * monic_deriv_at(ss.base, m, 0, ss.a)
        + ss.N * end.dq_at_a * monic_deriv_at(ss.base, m, 1, ss.a)
    )


def _qq_coeff(ss: SobolevSystem, g: GGSystem, n: int, k: int) -> Real:
    """Coefficient of ``P^gg_k`` in ``(x-a)^2 Q_n``, ``k <= n + 1``."""
    if k <= n - 1:
        end = q_endpoint(ss, n)
        num = -(
            ss.M * end.q_at_a * gg_deriv_at(g, k, 0, ss.a)
            + ss.N * end.dq_at_a * gg_deriv_at(g, k, 1, ss.a)
        )
    else:
        num = _q_mu_inner(ss, n, k)
        if k >= 1:
            num += g.B(k) * _q_mu_inner(ss, n, k - 1)
        if k >= 2:
            num += g.C(k) * _q_mu_inner(ss, n, k - 2)
    return num / gg_norm_sq(g, k)


def qq_connection(ss: SobolevSystem, g: GGSystem, n: int) -> QQConnection:
    """``(x-a)^2 Q_n = P^gg_{n+2} + sum_k alpha_{n+1,k} P^gg_k``."""
    if n < 0:
        raise DomainError(f"degree must be non-negative, got {n}")
    if g.base is not ss.base or g.a != ss.a:
        raise DomainError("gg system and Sobolev system must share base and point a")
    zero = mp.mpf(0)

    if n < 4:
        logger.debug("Q-to-gg coefficients at n=%d by projection", n)
        lhs = poly_shift_square(q_poly(ss, n), ss.a)
        c = project_onto_gg(g, lhs, n + 1)
        return QQConnection(
            a_pp1=c[n + 1],
            a_p0=c[n],
            a_m1=c[n - 1] if n >= 1 else zero,
            a_m2=c[n - 2] if n >= 2 else zero,
            lower=tuple(c[: max(0, n - 2)]),
            provenance=PROJECTION,
        )

    def h(m: int) -> Real:
        return norm_sq(ss.base, m)

    end = q_endpoint(ss, n)
    M, N, a = ss.M, ss.N, ss.a
    B, C = g.B, g.C

    def mass(m: int) -> Real:
        return (
            M * end.q_at_a * monic_deriv_at(ss.base, m, 0, a)
            + N * end.dq_at_a * monic_deriv_at(ss.base, m, 1, a)
        )

    a_pp1 = (B(n + 1) * h(n) - C(n + 1) * mass(n - 1)) / (C(n + 1) * h(n - 1))
    a_p0 = (h(n) - B(n) * mass(n - 1) - C(n) * mass(n - 2)) / (C(n) * h(n - 2))
    a_m1 = -(mass(n - 1) + B(n - 1) * mass(n - 2) + C(n - 1) * mass(n - 3)) / (C(n - 1) * h(n - 3))
    a_m2 = -(mass(n - 2) + B(n - 2) * mass(n - 3) + C(n - 2) * mass(n - 4)) / (C(n - 2) * h(n - 4))
    lower = tuple(_qq_coeff(ss, g, n, k) for k in range(n - 2))
    return QQConnection(a_pp1, a_p0, a_m1, a_m2, lower)


def qq_residual_poly(ss: SobolevSystem, g: GGSystem, n: int, conn: QQConnection) -> tuple[Poly, Poly]:
    """Both sides of the Q-to-gg expansion as explicit polynomials."""
    lhs = poly_shift_square(q_poly(ss, n), ss.a)
    rhs = gg_poly(g, n + 2)
    for k, c in enumerate(conn.coefficients(n)):
        rhs = poly_axpy(c, gg_poly(g, k), rhs)
    return lhs, rhs

