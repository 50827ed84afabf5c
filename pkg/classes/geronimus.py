#!/usr/bin/env python3
"""Double Geronimus transformation of an orthogonal polynomial system.

For a base measure ``mu`` and a point ``a`` outside its support the
transformed measure satisfies ``(x - a)**2 dmu_gg = dmu`` and its monic
orthogonal polynomials expand as

    P^gg_n = P_n + B_n P_{n-1} + C_n P_{n-2}.

Recurrence and connection coefficients are given in closed form from the
base norms and ``B_n``, ``C_n``. Where those formulas reach below degree
zero (small ``n``) the coefficients are computed by projection under
``<., .>_gg`` instead and tagged with ``provenance = "projection"``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from mpmath import mp

from logging_utils import get_logger

from .errors import DomainError
from .jacobi import JacobiParams, gg_expansion_coeffs, jacobi_connection_coeffs, jacobi_system
from .opsys import OrthoSystem, inner_mu, monic_deriv_at, monic_poly, norm_sq
from .polycore import Poly, Real, ZERO, poly_combination, poly_shift_square, to_real

logger = get_logger(__name__)

CLOSED_FORM = "closed_form"
PROJECTION = "projection"


@dataclass(frozen=True)
class GGSystem:
    """Base system, transformed system and the expansion coefficients.

    ``B`` and ``C`` map ``n`` to ``B_n`` and ``C_n`` with
    ``B_0 = C_0 = C_1 = 0``. ``params`` is set for Jacobi instances so
    that their specialised closed forms can be used.
    """

    base: OrthoSystem
    gg: OrthoSystem
    a: Real
    B: Callable[[int], Real]
    C: Callable[[int], Real]
    params: Optional[JacobiParams] = None


@dataclass(frozen=True)
class ThreeTermCoeffs:
    sigma_nn: Real
    sigma_nm1: Real
    provenance: str = CLOSED_FORM


@dataclass(frozen=True)
class FiveTermCoeffs:
    """Coefficients of ``(x-a)^2 P^gg_n`` beyond the leading ``P^gg_{n+2}``."""

    a_pp1: Real
    a_p0: Real
    a_m1: Real
    a_m2: Real
    provenance: str = CLOSED_FORM


@dataclass(frozen=True)
class ConnectionCoeffs:
    """``(x-a)^2 P_n = P^gg_{n+2} + s_pp1 P^gg_{n+1} + s_p0 P^gg_n``."""

    s_pp1: Real
    s_p0: Real
    provenance: str = CLOSED_FORM


# ----------------------------------------------------------------------
# constructors
# ----------------------------------------------------------------------
def make_jacobi_gg(p: JacobiParams) -> GGSystem:
    """Jacobi instance at ``a = -1``: the gg weight is ``(1-x)^a (1+x)^(b-2)``."""
    p.require_gg()
    return GGSystem(
        base=jacobi_system(p),
        gg=jacobi_system(p.shifted()),
        a=mp.mpf(-1),
        B=lambda n: gg_expansion_coeffs(p, n)[0],
        C=lambda n: gg_expansion_coeffs(p, n)[1],
        params=p,
    )


def make_generic_gg(base: OrthoSystem, gg: OrthoSystem, a) -> GGSystem:
    """Pair two user supplied systems with ``(x - a)^2 dmu_gg = dmu``.

    ``B_n`` and ``C_n`` are obtained from the two conditions
    ``<P_n + B P_{n-1} + C P_{n-2}, 1>_gg = 0`` and
    ``<..., x - a>_gg = 0``. The zeroth moment of the gg measure is part
    of ``gg`` and is not derived.
    """
    a = to_real(a)
    lo, hi = (to_real(v) for v in base.support)
    if lo < a < hi:
        raise DomainError(f"a={a} lies inside the support of {base.label}")
    solved: dict = {}
    one = Poly((1,))
    shift = Poly((-a, 1))

    def coeffs(n: int) -> tuple[Real, Real]:
        key = (n, mp.prec)
        if key in solved:
            return solved[key]
        zero = mp.mpf(0)
        if n == 0:
            out = (zero, zero)
        elif n == 1:
            p1, p0 = monic_poly(base, 1), monic_poly(base, 0)
            out = (-inner_mu(gg, p1, one) / inner_mu(gg, p0, one), zero)
        else:
            pn, p1, p2 = (monic_poly(base, n - i) for i in range(3))
            lhs = mp.matrix(
                [
                    [inner_mu(gg, p1, one), inner_mu(gg, p2, one)],
                    [inner_mu(gg, p1, shift), inner_mu(gg, p2, shift)],
                ]
            )
            rhs = mp.matrix([-inner_mu(gg, pn, one), -inner_mu(gg, pn, shift)])
            sol = mp.lu_solve(lhs, rhs)
            out = (sol[0], sol[1])
        solved[key] = out
        return out

    return GGSystem(
        base=base,
        gg=gg,
        a=a,
        B=lambda n: coeffs(n)[0],
        C=lambda n: coeffs(n)[1],
    )


# ----------------------------------------------------------------------
# polynomials and norms
# ----------------------------------------------------------------------
def _components(g: GGSystem, n: int) -> list[tuple[int, Real]]:
    """``[(degree, coefficient)]`` of ``P^gg_n`` in the base basis."""
    out = [(n, mp.mpf(1))]
    if n >= 1:
        out.append((n - 1, g.B(n)))
    if n >= 2:
        out.append((n - 2, g.C(n)))
    return out


def gg_poly(g: GGSystem, n: int) -> Poly:
    if n < 0:
        return ZERO
    return poly_combination((c, monic_poly(g.base, m)) for m, c in _components(g, n))


def gg_deriv_at(g: GGSystem, n: int, j: int, x) -> Real:
    """``(P^gg_n)^{(j)}(x)`` from base endpoint data."""
    if n < 0:
        return mp.mpf(0)
    return mp.fsum(c * monic_deriv_at(g.base, m, j, x) for m, c in _components(g, n))


def gg_inner(g: GGSystem, p: Poly, q: Poly) -> Real:
    return inner_mu(g.gg, p, q)


def gg_norm_sq(g: GGSystem, n: int) -> Real:
    """``||P^gg_n||^2_gg = C_n ||P_{n-2}||^2_0`` for ``n >= 2``, direct below."""
    if n >= 2:
        return g.C(n) * norm_sq(g.base, n - 2)
    p = gg_poly(g, n)
    return gg_inner(g, p, p)


def project_onto_gg(g: GGSystem, p: Poly, top: int) -> list[Real]:
    """Coefficients of ``p`` on ``P^gg_0 .. P^gg_top`` by gg inner products."""
    coeffs = []
    for k in range(top + 1):
        e = gg_poly(g, k)
        coeffs.append(gg_inner(g, p, e) / gg_inner(g, e, e))
    return coeffs


# ----------------------------------------------------------------------
# recurrences
# ----------------------------------------------------------------------
def gg_three_term(g: GGSystem, n: int) -> ThreeTermCoeffs:
    """``P^gg_{n+1} = (x - a - sigma_nn) P^gg_n - sigma_nm1 P^gg_{n-1}``."""
    if n < 0:
        raise DomainError(f"degree must be non-negative, got {n}")
    sigma_nn = g.B(n) - g.B(n + 1) + g.base.beta(n) - g.a
    if n == 0:
        return ThreeTermCoeffs(sigma_nn, mp.mpf(0))
    if n >= 3:
        h = g.base
        sigma_nm1 = g.C(n) * norm_sq(h, n - 2) / (g.C(n - 1) * norm_sq(h, n - 3))
        return ThreeTermCoeffs(sigma_nn, sigma_nm1)
    logger.debug("three-term sigma_{%d,%d} by projection", n, n - 1)
    sigma_nm1 = gg_norm_sq(g, n) / gg_norm_sq(g, n - 1)
    return ThreeTermCoeffs(sigma_nn, sigma_nm1, PROJECTION)


def gg_five_term(g: GGSystem, n: int) -> FiveTermCoeffs:
    """Expansion of ``(x - a)^2 P^gg_n`` in the gg basis."""
    if n < 0:
        raise DomainError(f"degree must be non-negative, got {n}")
    if n < 4:
        logger.debug("five-term coefficients at n=%d by projection", n)
        lhs = poly_shift_square(gg_poly(g, n), g.a)
        c = project_onto_gg(g, lhs, n + 1)
        zero = mp.mpf(0)
        return FiveTermCoeffs(
            a_pp1=c[n + 1],
            a_p0=c[n],
            a_m1=c[n - 1] if n >= 1 else zero,
            a_m2=c[n - 2] if n >= 2 else zero,
            provenance=PROJECTION,
        )
    def h(k: int) -> Real:
        return norm_sq(g.base, k)

    B, C = g.B, g.C
    a_pp1 = (C(n + 1) * B(n) * h(n - 1) + B(n + 1) * h(n)) / (C(n + 1) * h(n - 1))
    a_p0 = (h(n) + B(n) ** 2 * h(n - 1) + C(n) ** 2 * h(n - 2)) / (C(n) * h(n - 2))
    a_m1 = (B(n) * h(n - 1) + C(n) * B(n - 1) * h(n - 2)) / (C(n - 1) * h(n - 3))
    a_m2 = C(n) * h(n - 2) / (C(n - 2) * h(n - 4))
    return FiveTermCoeffs(a_pp1, a_p0, a_m1, a_m2)


def base_to_gg_connection(g: GGSystem, n: int) -> ConnectionCoeffs:
    """``(x - a)^2 P_n`` in the gg basis: only the top three terms survive."""
    if n < 0:
        raise DomainError(f"degree must be non-negative, got {n}")
    if n >= 2:
        h = g.base
        s_pp1 = g.B(n + 1) * norm_sq(h, n) / (g.C(n + 1) * norm_sq(h, n - 1))
        s_p0 = norm_sq(h, n) / (g.C(n) * norm_sq(h, n - 2))
        return ConnectionCoeffs(s_pp1, s_p0)
    if g.params is not None:
        return ConnectionCoeffs(*jacobi_connection_coeffs(g.params, n))
    logger.debug("connection coefficients at n=%d by projection", n)
    lhs = poly_shift_square(monic_poly(g.base, n), g.a)
    c = project_onto_gg(g, lhs, n + 1)
    return ConnectionCoeffs(c[n + 1], c[n], PROJECTION)
