#!/usr/bin/env python3
"""Monic orthogonal polynomial systems defined by a three-term recurrence.

A system is fixed by its recurrence coefficients ``beta(n)``, ``gamma(n)``
and the zeroth moment ``mu0`` of the underlying measure::

    x P_n(x) = P_{n+1}(x) + beta_n P_n(x) + gamma_n P_{n-1}(x)

Polynomials, norms and Gauss rules are built on demand and cached per
working precision on the system instance. Cache updates hold the system's
lock, so threads sharing a system never see a half-built cache. ``mp.prec``
lives in mpmath's process-wide context and special functions raise it
temporarily, so parallel numerical work belongs in separate processes.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Callable, Optional

from mpmath import mp

from logging_utils import get_logger

from .errors import InvalidSystemError, PrecisionExhaustedError
from .polycore import (
    Poly,
    Real,
    ZERO,
    poly_axpy,
    poly_derivative,
    poly_eval,
    poly_mul,
    to_real,
)

logger = get_logger(__name__)

# Gauss rule sizes are rounded up to a multiple of this so that inner
# products of nearby degrees share one cached rule.
RULE_BLOCK = 8

InnerProduct = Callable[[Poly, Poly], Real]


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss rule with strictly increasing ``nodes`` and positive ``weights``."""

    nodes: tuple
    weights: tuple

    @property
    def size(self) -> int:
        return len(self.nodes)

    def integrate(self, f: Callable[[Real], Real]) -> Real:
        return mp.fsum(w * f(x) for x, w in zip(self.nodes, self.weights))


@dataclass(frozen=True)
class OrthoSystem:
    """Orthogonal polynomial family of a positive measure on ``support``.

    Parameters
    ----------
    beta, gamma : callable
        Recurrence coefficients ``n -> beta_n`` (n >= 0) and
        ``n -> gamma_n`` (n >= 1). Both must be pure.
    mu0 : Real
        Zeroth moment of the measure, strictly positive.
    label : str
        Human readable tag used in logs and reports.
    support : tuple
        Interval carrying the measure.
    endpoint : Real, optional
        Point at which ``endpoint_deriv`` gives closed-form values.
    endpoint_deriv : callable, optional
        ``(n, k) -> P_n^{(k)}(endpoint)`` for the monic polynomials.
    """

    beta: Callable[[int], Real]
    gamma: Callable[[int], Real]
    mu0: Real
    label: str = "system"
    support: tuple = (-1, 1)
    endpoint: Optional[Real] = None
    endpoint_deriv: Optional[Callable[[int, int], Real]] = None
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)
    _lock: threading.RLock = field(
        default_factory=threading.RLock, compare=False, hash=False, repr=False
    )

    def __post_init__(self) -> None:
        if self.mu0 <= 0:
            raise InvalidSystemError(f"{self.label}: mu0 must be positive, got {self.mu0}")

    def cached(self, name: str, factory: Callable[[], object]):
        """Return the cache slot ``name`` for the current working precision."""
        key = (name, mp.prec)
        with self._lock:
            if key not in self._cache:
                self._cache[key] = factory()
            return self._cache[key]


# ----------------------------------------------------------------------
# polynomials and norms
# ----------------------------------------------------------------------
def monic_polys(sys: OrthoSystem, n: int) -> list[Poly]:
    """Return ``[P_0, ..., P_n]`` from the forward recurrence."""
    if n < 0:
        raise ValueError(f"degree must be non-negative, got {n}")
    polys: list[Poly] = sys.cached("polys", lambda: [Poly((1,))])
    x = Poly((0, 1))
    with sys._lock:
        while len(polys) <= n:
            k = len(polys) - 1
            prev = polys[k - 1] if k >= 1 else ZERO
            nxt = poly_axpy(-sys.beta(k), polys[k], poly_mul(x, polys[k]))
            if k >= 1:
                nxt = poly_axpy(-sys.gamma(k), prev, nxt)
            polys.append(nxt)
        return polys[: n + 1]


def monic_poly(sys: OrthoSystem, n: int) -> Poly:
    return monic_polys(sys, n)[n]


def norm_sq(sys: OrthoSystem, n: int) -> Real:
    """``||P_n||^2 = mu0 * gamma_1 * ... * gamma_n``."""
    if n < 0:
        raise ValueError(f"degree must be non-negative, got {n}")
    norms: list = sys.cached("norms", lambda: [to_real(sys.mu0)])
    with sys._lock:
        while len(norms) <= n:
            norms.append(norms[-1] * sys.gamma(len(norms)))
        return norms[n]


def monic_deriv_at(sys: OrthoSystem, n: int, k: int, x) -> Real:
    """``P_n^{(k)}(x)``, from closed-form endpoint data when ``x`` is the endpoint."""
    if n < 0:
        return mp.mpf(0)
    x = to_real(x)
    if sys.endpoint_deriv is not None and sys.endpoint is not None and x == sys.endpoint:
        return sys.endpoint_deriv(n, k)
    return poly_eval(poly_derivative(monic_poly(sys, n), k), x)


# ----------------------------------------------------------------------
# quadrature
# ----------------------------------------------------------------------
def gauss_rule(sys: OrthoSystem, m: int) -> QuadratureRule:
    """``m``-point Gauss rule of the system's measure (Golub-Welsch).

    The Jacobi matrix is diagonalised with ``mpmath.eigsy`` at the working
    precision; weights are ``mu0`` times the squared first components of
    the normalised eigenvectors.
    """
    if m < 1:
        raise ValueError(f"rule size must be >= 1, got {m}")
    rules: dict = sys.cached("rules", dict)
    if m in rules:
        return rules[m]

    for i in range(1, m):
        if sys.gamma(i) <= 0:
            raise InvalidSystemError(
                f"{sys.label}: gamma_{i} = {mp.nstr(sys.gamma(i), 10)} is not positive"
            )

    if m == 1:
        rule = QuadratureRule((to_real(sys.beta(0)),), (to_real(sys.mu0),))
    else:
        jac = mp.zeros(m, m)
        for i in range(m):
            jac[i, i] = sys.beta(i)
        for i in range(1, m):
            off = mp.sqrt(sys.gamma(i))
            jac[i, i - 1] = off
            jac[i - 1, i] = off
        evals, evecs = mp.eigsy(jac)
        pairs = sorted(
            (evals[i], sys.mu0 * evecs[0, i] ** 2) for i in range(m)
        )
        rule = QuadratureRule(
            tuple(node for node, _ in pairs), tuple(w for _, w in pairs)
        )
    logger.debug("built %d-point Gauss rule for %s at %d bits", m, sys.label, mp.prec)
    with sys._lock:
        return rules.setdefault(m, rule)


def _rule_size(total_degree: int) -> int:
    need = max(1, (total_degree + 2) // 2)
    return -(-need // RULE_BLOCK) * RULE_BLOCK


def inner_mu(sys: OrthoSystem, p: Poly, q: Poly) -> Real:
    """``<p, q>_0``, integrated exactly by a large enough Gauss rule."""
    if p.is_zero() or q.is_zero():
        return mp.mpf(0)
    rule = gauss_rule(sys, _rule_size(p.degree + q.degree))
    return mp.fsum(
        w * poly_eval(p, x) * poly_eval(q, x) for x, w in zip(rule.nodes, rule.weights)
    )


def moments(sys: OrthoSystem, count: int) -> list[Real]:
    """``[m_0, ..., m_{count-1}]`` with ``m_k = int x^k dmu`` by quadrature."""
    if count < 1:
        return []
    rule = gauss_rule(sys, _rule_size(count - 1))
    return [
        mp.fsum(w * x**k for x, w in zip(rule.nodes, rule.weights))
        for k in range(count)
    ]


# ----------------------------------------------------------------------
# brute-force oracle
# ----------------------------------------------------------------------
def gram_schmidt_oracle(inner: InnerProduct, n: int) -> list[Poly]:
    """Monic orthogonal polynomials of degrees ``0..n`` for any inner product.

    Modified Gram-Schmidt on the monomials. Works for ``<.,.>_0``,
    ``<.,.>_gg`` and the Sobolev product alike.
    """
    basis: list[Poly] = []
    norms: list[Real] = []
    for k in range(n + 1):
        v = Poly.monomial(k)
        for e, h in zip(basis, norms):
            v = poly_axpy(-inner(v, e) / h, e, v)
        h = inner(v, v)
        if h <= 0:
            raise PrecisionExhaustedError(
                f"squared norm of degree {k} is {mp.nstr(h, 10)}; "
                "inner product not positive definite at this precision"
            )
        basis.append(v)
        norms.append(h)
    return basis
