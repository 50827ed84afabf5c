#!/usr/bin/env python3
"""Convergence scans for the large-``n`` limits of the Jacobi instance.

Every scan evaluates a quantity on a geometric grid of degrees, pairs it
with its limit and records the absolute error. All Jacobi endpoint data
comes from :class:`classes.jacobi.JacobiEndpointTable`, so a scan up to
``n = 4096`` needs one linear pass and no polynomial expansion.

Quantities involving ``Q_n`` are computed in the scaled normalisation
``P~_n``; kernels do not depend on the normalisation, and the ratios are
invariant under a common rescaling of ``P_n`` and ``Q_n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Optional, Sequence

import numpy as np
import pandas as pd
from mpmath import mp

from classes.errors import DomainError
from classes.jacobi import JacobiEndpointTable, JacobiParams, scaled_derivative_minus1, scaled_norm_sq
from classes.polycore import Real, working_precision
from classes.sobolev import QEndpointData, SobolevParams, solve_endpoint_system
from logging_utils import get_logger

logger = get_logger(__name__)

SCAN_KINDS = ("gamma", "endpoint", "norm_limit", "kernel", "deriv_ratio", "norm_ratio", "determinant")

COLUMNS = ["n", "value", "limit", "abs_error"]


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    value: Real
    limit: Real
    abs_error: Real


@dataclass(frozen=True)
class ConvergenceTable:
    """Rows of one scan, sorted by strictly increasing ``n``.

    ``decay_exponent`` is the fitted slope of ``log|error|`` against
    ``log n`` over the trailing half of the rows, or ``None`` when the
    errors vanish or are too few to fit.
    """

    kind: str
    rows: tuple
    meta: dict = field(default_factory=dict)
    decay_exponent: Optional[float] = None

    def __post_init__(self) -> None:
        ns = [r.n for r in self.rows]
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise ValueError(f"{self.kind}: rows must have strictly increasing n")

    @property
    def last(self) -> ConvergenceRow:
        return self.rows[-1]

    def max_abs_error(self) -> Real:
        return max(r.abs_error for r in self.rows)

    def to_frame(self, digits: int) -> pd.DataFrame:
        """Rows as decimal strings with ``digits`` significant digits."""
        return pd.DataFrame(
            [
                {
                    "n": r.n,
                    "value": mp.nstr(r.value, digits),
                    "limit": mp.nstr(r.limit, digits),
                    "abs_error": mp.nstr(r.abs_error, digits),
                }
                for r in self.rows
            ],
            columns=COLUMNS,
        )


# ----------------------------------------------------------------------
# grid, fitting and extrapolation
# ----------------------------------------------------------------------
def geometric_grid(n0: int = 16, per_octave: int = 2, n_max: int = 4096) -> list[int]:
    """``ceil(n0 * 2**(i / per_octave))`` for every ``i`` staying below ``n_max``."""
    if n0 < 1 or per_octave < 1 or n_max < n0:
        raise DomainError(f"bad grid n0={n0}, per_octave={per_octave}, n_max={n_max}")
    out: list[int] = []
    slack = mp.ldexp(mp.mpf(1), -(mp.prec // 2))
    i = 0
    while True:
        n = int(mp.ceil(n0 * mp.power(2, mp.mpf(i) / per_octave) - slack))
        if n > n_max:
            break
        if not out or n > out[-1]:
            out.append(n)
        i += 1
    return out


def fit_decay(t: ConvergenceTable) -> Optional[float]:
    """Least-squares slope of ``log|error|`` against ``log n``, trailing half.

    Returns ``None`` when every error is exactly zero (exact convergence).
    """
    if all(r.abs_error == 0 for r in t.rows):
        return None
    tail = [r for r in t.rows[len(t.rows) // 2:] if r.abs_error != 0]
    if len(tail) < 4:
        raise ValueError(f"{t.kind}: need at least 4 rows with non-zero error, got {len(tail)}")
    log_n = np.array([float(mp.log(r.n)) for r in tail])
    log_e = np.array([float(mp.log(r.abs_error)) for r in tail])
    slope, _ = np.polyfit(log_n, log_e, 1)
    return float(slope)


RICHARDSON_POINTS = 4


def richardson_limit(t: ConvergenceTable, points: int = RICHARDSON_POINTS) -> Real:
    """Value at ``1/n = 0`` of the polynomial in ``1/n`` through the last rows."""
    rows = t.rows[-points:]
    if len(rows) < points:
        raise ValueError(f"{t.kind}: need {points} rows, got {len(t.rows)}")
    h = [mp.mpf(1) / r.n for r in rows]
    lhs = mp.matrix([[hi**k for k in range(points)] for hi in h])
    rhs = mp.matrix([r.value for r in rows])
    return mp.lu_solve(lhs, rhs)[0]


def _finish(kind: str, rows: Iterable[ConvergenceRow], meta: dict) -> ConvergenceTable:
    table = ConvergenceTable(kind, tuple(rows), meta)
    try:
        decay = fit_decay(table)
    except ValueError as exc:
        logger.debug("no decay fit for %s: %s", kind, exc)
        decay = None
    logger.info(
        "%s scan: %d rows, last n=%d, error=%s",
        kind,
        len(table.rows),
        table.last.n if table.rows else 0,
        mp.nstr(table.last.abs_error, 5) if table.rows else "-",
    )
    return replace(table, decay_exponent=decay)


def _rows(ns: Sequence[int], value: Callable[[int], Real], limit: Real) -> list[ConvergenceRow]:
    return [ConvergenceRow(n, v, limit, abs(v - limit)) for n, v in ((n, value(n)) for n in ns)]


def _check_ns(ns: Sequence[int]) -> list[int]:
    ns = list(ns)
    if not ns or min(ns) < 1:
        raise DomainError("scan degrees must be a non-empty list of positive integers")
    return ns


def _params_meta(p: JacobiParams, **extra) -> dict:
    meta = {"alpha": mp.nstr(p.alpha, 20), "beta": mp.nstr(p.beta, 20)}
    meta.update({k: (v if isinstance(v, (int, str)) else mp.nstr(v, 20)) for k, v in extra.items()})
    return meta


# ----------------------------------------------------------------------
# Gamma scaling and Jacobi endpoint limits
# ----------------------------------------------------------------------
def gamma_ratio_scan(k: int, l: int, ns: Sequence[int]) -> ConvergenceTable:
    """``n**(k-l) Gamma(n+l) / Gamma(n+k) -> 1``."""
    if k < 0 or l < 0:
        raise DomainError(f"k, l >= 0 required, got k={k}, l={l}")
    ns = _check_ns(ns)

    def value(n: int) -> Real:
        if k >= l:
            return mp.power(n, k - l) / mp.rf(n + l, k - l)
        return mp.rf(n + k, l - k) / mp.power(n, l - k)

    return _finish("gamma", _rows(ns, value, mp.mpf(1)), {"k": k, "l": l})


def endpoint_limit_scan(p: JacobiParams, k: int, ns: Sequence[int]) -> ConvergenceTable:
    """``(-1)^n P~_n^{(k)}(-1) / n^(beta - alpha + 2k)``."""
    if k < 0:
        raise DomainError(f"k >= 0 required, got {k}")
    ns = _check_ns(ns)
    limit = mp.gamma(p.alpha + 1) / (mp.power(-2, k) * mp.gamma(p.beta + k + 1))
    expo = p.beta - p.alpha + 2 * k

    def value(n: int) -> Real:
        sign = -1 if n % 2 else 1
        return sign * scaled_derivative_minus1(p, n, k) / mp.power(n, expo)

    return _finish("endpoint", _rows(ns, value, limit), _params_meta(p, k=k))


def norm_limit_scan(p: JacobiParams, ns: Sequence[int]) -> ConvergenceTable:
    """``n^(2 alpha + 1) ||P~_n||^2 -> 2^(alpha+beta) Gamma(alpha+1)^2``."""
    ns = _check_ns(ns)
    limit = mp.power(2, p.s) * mp.gamma(p.alpha + 1) ** 2

    def value(n: int) -> Real:
        return mp.power(n, 2 * p.alpha + 1) * scaled_norm_sq(p, n)

    return _finish("norm_limit", _rows(ns, value, limit), _params_meta(p))


def kernel_limit_scan(p: JacobiParams, k: int, s: int, ns: Sequence[int]) -> ConvergenceTable:
    """``K_{n-1}^{(k,s)}(-1,-1) / n^(2 beta + 2k + 2s + 2)``."""
    if k < 0 or s < 0:
        raise DomainError(f"k, s >= 0 required, got k={k}, s={s}")
    ns = _check_ns(ns)
    b = p.beta
    sign = -1 if (k + s) % 2 else 1
    limit = sign / (
        mp.power(2, p.s + k + s + 1)
        * (b + k + s + 1)
        * mp.gamma(b + k + 1)
        * mp.gamma(b + s + 1)
    )
    table = JacobiEndpointTable(p, max(ns), orders=(k, s))
    expo = 2 * b + 2 * k + 2 * s + 2

    def value(n: int) -> Real:
        return table.kernel(n, k, s) / mp.power(n, expo)

    return _finish("kernel", _rows(ns, value, limit), _params_meta(p, k=k, s=s))


# ----------------------------------------------------------------------
# Sobolev limits at a = -1
# ----------------------------------------------------------------------
def _check_sobolev(sp: SobolevParams, allow_unperturbed: bool = False) -> None:
    if sp.a != -1:
        raise DomainError(f"asymptotic scans need a = -1, got a={sp.a}")
    if allow_unperturbed and sp.M == 0 and sp.N == 0:
        return
    if sp.M <= 0 or sp.N <= 0:
        raise DomainError(
            f"M > 0 and N > 0 required: limit not covered for M={sp.M}, N={sp.N}"
        )


def _solve(table: JacobiEndpointTable, sp: SobolevParams, n: int) -> QEndpointData:
    """Scaled ``Q~_n(-1)``, ``Q~_n'(-1)`` and the Cramer determinant."""
    k00 = table.kernel(n, 0, 0)
    k01 = table.kernel(n, 0, 1)
    k11 = table.kernel(n, 1, 1)
    p0, p1 = table.deriv(n, 0), table.deriv(n, 1)
    return solve_endpoint_system(sp.M, sp.N, k00, k01, k01, k11, p0, p1)


def derivative_ratio_scan(
    p: JacobiParams, sp: SobolevParams, j: int, ns: Sequence[int]
) -> ConvergenceTable:
    """``Q_n^{(j)}(-1) / P~_n^{(j)}(-1) -> j(j-1) / ((beta+j+1)(beta+j+2))``."""
    if j < 0:
        raise DomainError(f"j >= 0 required, got {j}")
    _check_sobolev(sp)
    ns = _check_ns(ns)
    if min(ns) < j:
        raise DomainError(f"P~_n^({j})(-1) vanishes for n < j; smallest degree is {min(ns)}")
    b = p.beta
    limit = mp.mpf(j * (j - 1)) / ((b + j + 1) * (b + j + 2))
    table = JacobiEndpointTable(p, max(ns), orders=(0, 1, j))

    def value(n: int) -> Real:
        sol = _solve(table, sp, n)
        if j == 0:
            qj = sol.q_at_a
        elif j == 1:
            qj = sol.dq_at_a
        else:
            qj = (
                table.deriv(n, j)
                - sp.M * sol.q_at_a * table.kernel(n, j, 0)
                - sp.N * sol.dq_at_a * table.kernel(n, j, 1)
            )
        return qj / table.deriv(n, j)

    meta = _params_meta(p, M=sp.M, N=sp.N, j=j)
    return _finish("deriv_ratio", _rows(ns, value, limit), meta)


def norm_ratio_scan(p: JacobiParams, sp: SobolevParams, ns: Sequence[int]) -> ConvergenceTable:
    """``||Q_n||_S / ||P~_n|| -> 1``; ``M = N = 0`` is accepted as a baseline."""
    _check_sobolev(sp, allow_unperturbed=True)
    ns = _check_ns(ns)
    table = JacobiEndpointTable(p, max(ns), orders=(0, 1))

    def value(n: int) -> Real:
        h = table.norms[n]
        sol = _solve(table, sp, n)
        q_norm = h + sp.M * sol.q_at_a * table.deriv(n, 0) + sp.N * sol.dq_at_a * table.deriv(n, 1)
        return mp.sqrt(q_norm / h)

    return _finish("norm_ratio", _rows(ns, value, mp.mpf(1)), _params_meta(p, M=sp.M, N=sp.N))


def determinant_limit_scan(p: JacobiParams, sp: SobolevParams, ns: Sequence[int]) -> ConvergenceTable:
    """Cramer determinant over ``n^(4 beta + 8)`` against its dominant balance."""
    _check_sobolev(sp)
    ns = _check_ns(ns)
    b = p.beta
    lead = mp.power(2, p.s + 2) * mp.gamma(b + 1) * mp.gamma(b + 2)
    limit = sp.M * sp.N / (lead**2 * (b + 1) * (b + 3) * (b + 2) ** 2)
    table = JacobiEndpointTable(p, max(ns), orders=(0, 1))
    expo = 4 * b + 8

    def value(n: int) -> Real:
        return _solve(table, sp, n).denom / mp.power(n, expo)

    return _finish("determinant", _rows(ns, value, limit), _params_meta(p, M=sp.M, N=sp.N))


# ----------------------------------------------------------------------
# precision stability
# ----------------------------------------------------------------------
def precision_drift(scan: Callable[[], ConvergenceTable], bits: int, n_cap: int = 200) -> Real:
    """Largest relative change of scan values between ``bits`` and ``2*bits``.

    ``scan`` must build its own parameters so they are parsed at each
    precision. Only rows with ``n <= n_cap`` are compared.
    """
    with working_precision(bits):
        low = [r for r in scan().rows if r.n <= n_cap]
    with working_precision(2 * bits):
        high = [r for r in scan().rows if r.n <= n_cap]
        worst = mp.mpf(0)
        for a, b in zip(low, high):
            scale = abs(b.value) if b.value != 0 else mp.mpf(1)
            worst = max(worst, abs(a.value - b.value) / scale)
    return worst
