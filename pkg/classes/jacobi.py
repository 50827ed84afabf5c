#!/usr/bin/env python3
"""Closed-form Jacobi data for the weight ``(1 - x)**alpha * (1 + x)**beta``.

Besides the monic recurrence this module provides the scaled polynomials

    P~_n = (n + alpha + beta + 1)_n / (2**n (alpha + 1)_n) * P_n

together with their exact values, derivatives and norms at ``x = -1``.
Endpoint data never goes through polynomial expansion, so it stays cheap
and accurate for degrees in the thousands.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from mpmath import mp

from .errors import DomainError
from .opsys import OrthoSystem
from .polycore import Real, to_real


@dataclass(frozen=True)
class JacobiParams:
    """Jacobi exponents, both strictly greater than ``-1``."""

    alpha: Real
    beta: Real

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", to_real(self.alpha))
        object.__setattr__(self, "beta", to_real(self.beta))
        if self.alpha <= -1 or self.beta <= -1:
            raise DomainError(
                f"alpha > -1 and beta > -1 required, got alpha={self.alpha}, beta={self.beta}"
            )

    @property
    def s(self) -> Real:
        return self.alpha + self.beta

    def require_gg(self) -> "JacobiParams":
        """Check the double Geronimus constraint ``beta > 1``."""
        if self.beta <= 1:
            raise DomainError(f"beta>1 required for the gg transformation, got beta={self.beta}")
        return self

    def shifted(self) -> "JacobiParams":
        """Parameters ``(alpha, beta - 2)`` of the transformed weight."""
        return JacobiParams(self.alpha, self.beta - 2)


# ----------------------------------------------------------------------
# special functions
# ----------------------------------------------------------------------
def pochhammer(x, n: int) -> Real:
    """Rising factorial ``(x)_n``; ``(x)_0 = 1``."""
    if n < 0:
        raise DomainError(f"pochhammer order must be non-negative, got {n}")
    return mp.rf(to_real(x), n)


def gamma_fn(x) -> Real:
    x = to_real(x)
    if x <= 0 and x == mp.floor(x):
        raise DomainError(f"Gamma has a pole at {x}")
    return mp.gamma(x)


# ----------------------------------------------------------------------
# recurrence
# ----------------------------------------------------------------------
def _beta_n(alpha: Real, beta: Real, n: int) -> Real:
    s = alpha + beta
    if n == 0:
        return (beta - alpha) / (s + 2)
    return (beta**2 - alpha**2) / ((2 * n + s) * (2 * n + s + 2))


def _gamma_n(alpha: Real, beta: Real, n: int) -> Real:
    s = alpha + beta
    if n <= 0:
        return mp.mpf(0)
    if n == 1:
        return 4 * (alpha + 1) * (beta + 1) / ((s + 2) ** 2 * (s + 3))
    t = 2 * n + s
    return 4 * n * (n + alpha) * (n + beta) * (n + s) / ((t - 1) * t**2 * (t + 1))


def jacobi_mu0(p: JacobiParams) -> Real:
    return mp.power(2, p.s + 1) * mp.gamma(p.alpha + 1) * mp.gamma(p.beta + 1) / mp.gamma(p.s + 2)


@lru_cache(maxsize=64)
def _build_system(alpha: Real, beta: Real, prec: int) -> OrthoSystem:
    p = JacobiParams(alpha, beta)
    return OrthoSystem(
        beta=lambda n: _beta_n(alpha, beta, n),
        gamma=lambda n: _gamma_n(alpha, beta, n),
        mu0=jacobi_mu0(p),
        label=f"jacobi({mp.nstr(alpha, 8)},{mp.nstr(beta, 8)})",
        support=(-1, 1),
        endpoint=mp.mpf(-1),
        endpoint_deriv=lambda n, k: monic_derivative_minus1(p, n, k),
    )


def jacobi_system(p: JacobiParams) -> OrthoSystem:
    """Monic Jacobi system; instances are shared per parameters and precision."""
    return _build_system(p.alpha, p.beta, mp.prec)


# ----------------------------------------------------------------------
# scaled polynomials at x = -1
# ----------------------------------------------------------------------
def scaled_factor(p: JacobiParams, n: int) -> Real:
    """``(n + alpha + beta + 1)_n / (2**n (alpha + 1)_n)``, equal to 1 at ``n = 0``."""
    return mp.rf(n + p.s + 1, n) / (mp.ldexp(mp.mpf(1), n) * mp.rf(p.alpha + 1, n))


def _factorial_ratio(p: JacobiParams, n: int) -> Real:
    # n! / (alpha + 1)_n
    return mp.rf(1, n) / mp.rf(p.alpha + 1, n)


def scaled_derivative_minus1(p: JacobiParams, n: int, k: int) -> Real:
    """``P~_n^{(k)}(-1)`` in closed form; zero for ``k > n``."""
    if k < 0 or n < 0:
        raise DomainError(f"need n >= 0 and k >= 0, got n={n}, k={k}")
    if k > n:
        return mp.mpf(0)
    sign = -1 if (n - k) % 2 else 1
    lift = mp.rf(p.s + n + 1, k) / mp.ldexp(mp.mpf(1), k)
    return sign * _factorial_ratio(p, n) * lift * mp.binomial(n + p.beta, n - k)


def scaled_value_minus1(p: JacobiParams, n: int) -> Real:
    return scaled_derivative_minus1(p, n, 0)


def monic_derivative_minus1(p: JacobiParams, n: int, k: int) -> Real:
    """``P_n^{(k)}(-1)`` for the monic polynomial."""
    return scaled_derivative_minus1(p, n, k) / scaled_factor(p, n)


def scaled_norm_sq(p: JacobiParams, n: int) -> Real:
    """``||P~_n||^2`` against the Jacobi weight."""
    if n < 0:
        raise DomainError(f"degree must be non-negative, got {n}")
    if n == 0:
        return jacobi_mu0(p)
    a, b, s = p.alpha, p.beta, p.s
    head = mp.power(2, s + 1) / (2 * n + s + 1)
    ratio = mp.gamma(n + a + 1) * mp.gamma(n + b + 1) / (mp.factorial(n) * mp.gamma(n + s + 1))
    return head * ratio * _factorial_ratio(p, n) ** 2


# ----------------------------------------------------------------------
# double Geronimus data
# ----------------------------------------------------------------------
def gg_expansion_coeffs(p: JacobiParams, n: int) -> tuple[Real, Real]:
    """``(B_n, C_n)`` with ``P_n^{(a,b-2)} = P_n + B_n P_{n-1} + C_n P_{n-2}``."""
    p.require_gg()
    if n < 0:
        raise DomainError(f"degree must be non-negative, got {n}")
    zero = mp.mpf(0)
    if n == 0:
        return zero, zero
    a, s = p.alpha, p.s
    t = 2 * n + s
    B = 4 * n * (a + n) / ((t - 2) * t)
    if n == 1:
        return B, zero
    C = 4 * n * (n - 1) * (a + n) * (a + n - 1) / ((t - 3) * (t - 2) ** 2 * (t - 1))
    return B, C


def jacobi_connection_coeffs(p: JacobiParams, n: int) -> tuple[Real, Real]:
    """``(sigma_{n+1,n+1}, sigma_{n+1,n})`` of ``(1+x)^2 P_n`` in the gg basis.

    Valid for every ``n >= 0``; the ``n = 0`` trailing coefficient is taken
    in its cancelled form ``4 beta (beta - 1) / (s (s + 1))``.
    """
    p.require_gg()
    if n < 0:
        raise DomainError(f"degree must be non-negative, got {n}")
    b, s = p.beta, p.s
    if n == 0:
        return 4 * b / (s + 2), 4 * b * (b - 1) / (s * (s + 1))
    t = 2 * n + s
    top = 4 * (n + b) * (n + s) / (t * (t + 2))
    low = 4 * (n + b - 1) * (n + b) * (n + s - 1) * (n + s) / ((t - 1) * t**2 * (t + 1))
    return top, low


# ----------------------------------------------------------------------
# endpoint table
# ----------------------------------------------------------------------
@dataclass
class JacobiEndpointTable:
    """Scaled endpoint values ``P~_i^{(k)}(-1)`` and norms for ``i <= n_max``.

    Everything is produced by one pass of exact ratio recurrences, and the
    kernel values at ``(-1, -1)`` come from prefix sums over that pass.

    Parameters
    ----------
    params : JacobiParams
    n_max : int
        Largest degree tabulated.
    orders : sequence of int
        Derivative orders to tabulate.
    """

    params: JacobiParams
    n_max: int
    orders: Sequence[int] = (0, 1)
    derivs: dict = field(init=False, repr=False, default_factory=dict)
    norms: list = field(init=False, repr=False, default_factory=list)
    _kernels: dict = field(init=False, repr=False, default_factory=dict)
    _lock: threading.RLock = field(
        init=False, repr=False, compare=False, default_factory=threading.RLock
    )

    def __post_init__(self) -> None:
        if self.n_max < 0:
            raise DomainError(f"n_max must be non-negative, got {self.n_max}")
        self.orders = tuple(sorted(set(self.orders)))
        p = self.params
        a, b, s = p.alpha, p.beta, p.s

        # n! / (alpha + 1)_n
        fact = [mp.mpf(1)]
        for i in range(self.n_max):
            fact.append(fact[-1] * (i + 1) / (a + 1 + i))

        # Gamma(n+a+1) Gamma(n+b+1) / (n! Gamma(n+s+1)), started at n = 1
        self.norms = [jacobi_mu0(p)]
        if self.n_max >= 1:
            ratio = mp.gamma(a + 2) * mp.gamma(b + 2) / mp.gamma(s + 2)
            two = mp.power(2, s + 1)
            for i in range(1, self.n_max + 1):
                self.norms.append(two / (2 * i + s + 1) * ratio * fact[i] ** 2)
                ratio = ratio * (i + a + 1) * (i + b + 1) / ((i + 1) * (i + s + 1))

        self.derivs = {}
        for k in self.orders:
            column = [mp.mpf(0)] * (self.n_max + 1)
            binom = mp.mpf(1)  # C(i + beta, i - k) at i = k
            for i in range(k, self.n_max + 1):
                if i > k:
                    binom = binom * (i + b) / (i - k)
                sign = -1 if (i - k) % 2 else 1
                lift = mp.rf(s + i + 1, k) / mp.ldexp(mp.mpf(1), k)
                column[i] = sign * fact[i] * lift * binom
            self.derivs[k] = column

    def deriv(self, n: int, k: int) -> Real:
        return self.derivs[k][n]

    def kernel(self, n: int, k: int, s: int) -> Real:
        """``K_{n-1}^{(k,s)}(-1,-1)``, the kernel summed over degrees ``< n``."""
        if n < 0 or n > self.n_max + 1:
            raise DomainError(f"kernel order out of range: n={n}, n_max={self.n_max}")
        key = (min(k, s), max(k, s))
        with self._lock:
            if key not in self._kernels:
                left, right = self.derivs[key[0]], self.derivs[key[1]]
                sums = [mp.mpf(0)]
                for i in range(self.n_max + 1):
                    sums.append(sums[-1] + left[i] * right[i] / self.norms[i])
                self._kernels[key] = sums
            return self._kernels[key][n]
