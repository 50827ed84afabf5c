#!/usr/bin/env python3
"""Arbitrary-precision reals and dense monomial-basis polynomials.

Every value in the package is an ``mpmath.mpf`` evaluated at the global
working precision ``mp.prec``. The precision is fixed once per run with
:func:`working_precision`.
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from mpmath import mp, mpf

Real = mpf

MIN_PRECISION_BITS = 64
DEFAULT_PRECISION_BITS = 256

# degree of the zero polynomial; compare with it, never add to it
ZERO_DEGREE = -math.inf


def to_real(value) -> Real:
    """Convert ints, decimal strings, fractions and mpf values to :data:`Real`."""
    if isinstance(value, Fraction):
        return mp.mpf(value.numerator) / value.denominator
    return mp.mpf(value)


@contextmanager
def working_precision(bits: int) -> Iterator[int]:
    """Run the enclosed block at ``bits`` of binary precision."""
    if bits < MIN_PRECISION_BITS:
        raise ValueError(f"precision_bits must be >= {MIN_PRECISION_BITS}, got {bits}")
    with mp.workprec(bits):
        yield bits


def tolerance() -> Real:
    """Return the identity tolerance ``2**(-prec/2)`` at the current precision."""
    return mp.ldexp(mp.mpf(1), -(mp.prec // 2))


@dataclass(frozen=True)
class Poly:
    """Dense polynomial, ``coeffs[i]`` is the coefficient of ``x**i``.

    Trailing zero coefficients are stripped on construction so that every
    instance is in canonical form and ``coeffs[-1]`` is the leading
    coefficient.
    """

    coeffs: tuple = ()

    def __post_init__(self) -> None:
        values = [to_real(c) for c in self.coeffs]
        while values and values[-1] == 0:
            values.pop()
        object.__setattr__(self, "coeffs", tuple(values))

    @classmethod
    def constant(cls, value) -> "Poly":
        return cls((value,))

    @classmethod
    def monomial(cls, k: int, value=1) -> "Poly":
        return cls((0,) * k + (value,))

    @property
    def degree(self) -> int | float:
        """Highest nonzero index, :data:`ZERO_DEGREE` for the zero polynomial."""
        if not self.coeffs:
            return ZERO_DEGREE
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Real:
        return self.coeffs[-1] if self.coeffs else mp.mpf(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x) -> Real:
        return poly_eval(self, x)

    def __len__(self) -> int:
        return len(self.coeffs)


ZERO = Poly()


def poly_eval(p: Poly, x) -> Real:
    """Evaluate ``p`` at ``x`` with Horner's scheme."""
    x = to_real(x)
    acc = mp.mpf(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def poly_derivative(p: Poly, k: int = 1) -> Poly:
    """Return the ``k``-th formal derivative of ``p``."""
    if k < 0:
        raise ValueError(f"derivative order must be non-negative, got {k}")
    coeffs = list(p.coeffs)
    for _ in range(k):
        if not coeffs:
            break
        coeffs = [i * coeffs[i] for i in range(1, len(coeffs))]
    return Poly(tuple(coeffs))


def poly_add(p: Poly, q: Poly) -> Poly:
    size = max(len(p), len(q))
    a = p.coeffs + (mp.mpf(0),) * (size - len(p))
    b = q.coeffs + (mp.mpf(0),) * (size - len(q))
    return Poly(tuple(x + y for x, y in zip(a, b)))


def poly_scale(c, p: Poly) -> Poly:
    c = to_real(c)
    return Poly(tuple(c * x for x in p.coeffs))


def poly_axpy(c, p: Poly, q: Poly) -> Poly:
    """Return ``c*p + q``."""
    return poly_add(poly_scale(c, p), q)


def poly_mul(p: Poly, q: Poly) -> Poly:
    if p.is_zero() or q.is_zero():
        return ZERO
    out = [mp.mpf(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(q.coeffs):
            out[i + j] += a * b
    return Poly(tuple(out))


def poly_shift_square(p: Poly, a) -> Poly:
    """Return ``(x - a)**2 * p``."""
    a = to_real(a)
    return poly_mul(Poly((a * a, -2 * a, 1)), p)


def poly_combination(terms: Iterable[tuple[Real, Poly]]) -> Poly:
    """Return ``sum(c * p for c, p in terms)``."""
    acc = ZERO
    for c, p in terms:
        acc = poly_axpy(c, p, acc)
    return acc


def max_abs_coeff(p: Poly) -> Real:
    return max((abs(c) for c in p.coeffs), default=mp.mpf(0))


def coeff_distance(p: Poly, q: Poly) -> Real:
    """Largest coefficient difference relative to the largest coefficient of ``q``."""
    diff = poly_add(p, poly_scale(-1, q))
    scale = max_abs_coeff(q) if not q.is_zero() else mp.mpf(1)
    return max_abs_coeff(diff) / scale


def chebyshev_points(count: int) -> list[Real]:
    """Chebyshev-spaced sample points in ``[-1, 1]``, increasing."""
    pts = [mp.cos((2 * i + 1) * mp.pi / (2 * count)) for i in range(count)]
    return sorted(pts)


def pointwise_residual(lhs: Poly, rhs: Poly, points: Sequence[Real]) -> Real:
    """Max over ``points`` of ``|lhs(x) - rhs(x)| / (1 + |lhs(x)|)``."""
    worst = mp.mpf(0)
    for x in points:
        left = poly_eval(lhs, x)
        res = abs(left - poly_eval(rhs, x)) / (1 + abs(left))
        worst = max(worst, res)
    return worst
