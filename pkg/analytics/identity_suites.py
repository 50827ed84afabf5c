#!/usr/bin/env python3
"""Numerical verification of the recurrence and connection identities.

Each suite checks one identity for a range of degrees and returns a
:class:`VerificationReport`. Residuals are relative and measured
pointwise at Chebyshev-spaced points unless stated otherwise; the
tolerance is ``2**(-precision_bits/2)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np
import pandas as pd
from mpmath import mp

from classes.errors import PrecisionExhaustedError
from classes.geronimus import (
    GGSystem,
    base_to_gg_connection,
    gg_five_term,
    gg_inner,
    gg_norm_sq,
    gg_poly,
    gg_three_term,
)
from classes.opsys import gram_schmidt_oracle, inner_mu, monic_poly
from classes.polycore import (
    Poly,
    Real,
    chebyshev_points,
    coeff_distance,
    poly_axpy,
    poly_combination,
    poly_mul,
    poly_shift_square,
    pointwise_residual,
    tolerance,
)
from classes.sobolev import (
    SobolevSystem,
    q_norm_sq,
    q_poly,
    q_poly_determinant,
    qq_connection,
    qq_residual_poly,
    sobolev_inner,
)
from logging_utils import get_logger

logger = get_logger(__name__)

SAMPLE_POINTS = 11


@dataclass(frozen=True)
class CaseResult:
    case_id: str
    residual: str
    tolerance: str
    passed: bool


@dataclass
class VerificationReport:
    """Outcome of one suite; residuals are kept for passing cases too."""

    suite: str
    cases: list = field(default_factory=list)

    @property
    def overall_pass(self) -> bool:
        return all(c.passed for c in self.cases)

    def add(self, case_id: str, residual: Real, tol: Real, digits: int = 12) -> None:
        self.cases.append(
            CaseResult(case_id, mp.nstr(residual, digits), mp.nstr(tol, digits), bool(residual <= tol))
        )

    def fail(self, case_id: str, reason: str, tol: Real, digits: int = 12) -> None:
        """Record a case that could not be evaluated, e.g. precision exhaustion."""
        self.cases.append(CaseResult(case_id, reason, mp.nstr(tol, digits), False))

    def failures(self) -> list[CaseResult]:
        return [c for c in self.cases if not c.passed]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    "suite": self.suite,
                    "case_id": c.case_id,
                    "residual": c.residual,
                    "tolerance": c.tolerance,
                    "pass": "true" if c.passed else "false",
                }
                for c in self.cases
            ],
            columns=["suite", "case_id", "residual", "tolerance", "pass"],
        )


def combine_reports(name: str, reports: Iterable[VerificationReport]) -> VerificationReport:
    """Merge suites into one report, prefixing case ids with the suite name."""
    out = VerificationReport(name)
    for rep in reports:
        for c in rep.cases:
            out.cases.append(CaseResult(f"{rep.suite}/{c.case_id}", c.residual, c.tolerance, c.passed))
    return out


def _run(report: VerificationReport, case_id: str, check: Callable[[], Real], tol: Real) -> None:
    try:
        report.add(case_id, check(), tol)
    except PrecisionExhaustedError as exc:
        logger.warning("%s %s: %s", report.suite, case_id, exc)
        report.fail(case_id, "precision_exhausted", tol)


def _log(report: VerificationReport) -> VerificationReport:
    bad = report.failures()
    if bad:
        logger.warning("%s: %d of %d cases failed", report.suite, len(bad), len(report.cases))
    else:
        logger.info("%s: all %d cases passed", report.suite, len(report.cases))
    return report


# ----------------------------------------------------------------------
# gg identities
# ----------------------------------------------------------------------
def three_term_suite(g: GGSystem, n_max: int) -> VerificationReport:
    """``P^gg_{n+1} = (x - a - sigma_nn) P^gg_n - sigma_nm1 P^gg_{n-1}``."""
    report = VerificationReport("three_term")
    pts = chebyshev_points(SAMPLE_POINTS)
    tol = tolerance()

    def check(n: int) -> Real:
        c = gg_three_term(g, n)
        pn = gg_poly(g, n)
        rhs = poly_axpy(-(g.a + c.sigma_nn), pn, poly_mul(Poly((0, 1)), pn))
        if n >= 1:
            rhs = poly_axpy(-c.sigma_nm1, gg_poly(g, n - 1), rhs)
        return pointwise_residual(gg_poly(g, n + 1), rhs, pts)

    for n in range(n_max + 1):
        _run(report, f"n={n}", lambda: check(n), tol)
    return _log(report)


def five_term_suite(g: GGSystem, n_max: int) -> VerificationReport:
    """``(x-a)^2 P^gg_n`` against its five-term gg expansion."""
    report = VerificationReport("five_term")
    pts = chebyshev_points(SAMPLE_POINTS)
    tol = tolerance()

    def check(n: int) -> Real:
        c = gg_five_term(g, n)
        terms = [(mp.mpf(1), gg_poly(g, n + 2)), (c.a_pp1, gg_poly(g, n + 1)), (c.a_p0, gg_poly(g, n))]
        if n >= 1:
            terms.append((c.a_m1, gg_poly(g, n - 1)))
        if n >= 2:
            terms.append((c.a_m2, gg_poly(g, n - 2)))
        lhs = poly_shift_square(gg_poly(g, n), g.a)
        return pointwise_residual(lhs, poly_combination(terms), pts)

    for n in range(n_max + 1):
        _run(report, f"n={n}", lambda: check(n), tol)
    return _log(report)


def connection_suite(g: GGSystem, n_max: int) -> VerificationReport:
    """``(x-a)^2 P_n = P^gg_{n+2} + s_pp1 P^gg_{n+1} + s_p0 P^gg_n``."""
    report = VerificationReport("connection")
    pts = chebyshev_points(SAMPLE_POINTS)
    tol = tolerance()

    def check(n: int) -> Real:
        c = base_to_gg_connection(g, n)
        rhs = poly_combination(
            [(mp.mpf(1), gg_poly(g, n + 2)), (c.s_pp1, gg_poly(g, n + 1)), (c.s_p0, gg_poly(g, n))]
        )
        lhs = poly_shift_square(monic_poly(g.base, n), g.a)
        return pointwise_residual(lhs, rhs, pts)

    for n in range(n_max + 1):
        _run(report, f"n={n}", lambda: check(n), tol)
    return _log(report)


def norm_suite(g: GGSystem, n_max: int) -> VerificationReport:
    """``C_n ||P_{n-2}||^2_0`` against quadrature of ``(P^gg_n)^2`` under mu_gg."""
    report = VerificationReport("gg_norm")
    tol = tolerance()

    def check(n: int) -> Real:
        p = gg_poly(g, n)
        direct = gg_inner(g, p, p)
        return abs(gg_norm_sq(g, n) - direct) / abs(direct)

    for n in range(2, n_max + 1):
        _run(report, f"n={n}", lambda: check(n), tol)
    return _log(report)


def measure_suite(g: GGSystem, seed: int, pairs: int = 20, degree: int = 15) -> VerificationReport:
    """``<(x-a)^2 p, q>_gg = <p, q>_0`` on random polynomial pairs."""
    report = VerificationReport("measure")
    rng = np.random.default_rng(seed)
    tol = tolerance()

    def random_poly() -> Poly:
        deg = int(rng.integers(0, degree + 1))
        return Poly(tuple(mp.mpf(float(c)) for c in rng.standard_normal(deg + 1)))

    for i in range(pairs):
        p, q = random_poly(), random_poly()

        def check() -> Real:
            lhs = gg_inner(g, poly_shift_square(p, g.a), q)
            rhs = inner_mu(g.base, p, q)
            scale = mp.sqrt(inner_mu(g.base, p, p) * inner_mu(g.base, q, q))
            return abs(lhs - rhs) / scale

        _run(report, f"pair={i}", check, tol)
    return _log(report)


# ----------------------------------------------------------------------
# Sobolev identities
# ----------------------------------------------------------------------
def qq_suite(ss: SobolevSystem, g: GGSystem, n_max: int) -> VerificationReport:
    """Full expansion of ``(x-a)^2 Q_n`` in the gg basis."""
    report = VerificationReport("qq_connection")
    pts = chebyshev_points(SAMPLE_POINTS)
    tol = tolerance()

    def check(n: int) -> Real:
        lhs, rhs = qq_residual_poly(ss, g, n, qq_connection(ss, g, n))
        return pointwise_residual(lhs, rhs, pts)

    for n in range(n_max + 1):
        _run(report, f"n={n}", lambda: check(n), tol)
    return _log(report)


def s_orthogonality_suite(ss: SobolevSystem, n_max: int) -> VerificationReport:
    """``|<Q_n, x^m>_S| / (||Q_n||_S ||x^m||_S)`` for ``m < n``."""
    report = VerificationReport("s_orthogonality")
    tol = tolerance()
    monos = [Poly.monomial(m) for m in range(n_max)]
    mono_norms = [mp.sqrt(sobolev_inner(ss, e, e)) for e in monos]

    def check(n: int) -> Real:
        q = q_poly(ss, n)
        qn = mp.sqrt(q_norm_sq(ss, n))
        return max(abs(sobolev_inner(ss, q, monos[m])) / (qn * mono_norms[m]) for m in range(n))

    for n in range(1, n_max + 1):
        _run(report, f"n={n}", lambda: check(n), tol)
    return _log(report)


def oracle_suite(ss: SobolevSystem, g: Optional[GGSystem], n_max: int) -> VerificationReport:
    """Gram-Schmidt under mu, mu_gg and S against the closed constructions."""
    report = VerificationReport("oracle")
    tol = tolerance()
    sys = ss.base

    def compare(label: str, inner, build: Callable[[int], Poly]) -> None:
        try:
            oracle = gram_schmidt_oracle(inner, n_max)
        except PrecisionExhaustedError as exc:
            logger.warning("oracle %s: %s", label, exc)
            report.fail(f"{label}", "precision_exhausted", tol)
            return
        for k, p in enumerate(oracle):
            _run(report, f"{label}/n={k}", lambda: coeff_distance(build(k), p), tol)

    compare("mu", lambda p, q: inner_mu(sys, p, q), lambda k: monic_poly(sys, k))
    if g is not None:
        compare("gg", lambda p, q: gg_inner(g, p, q), lambda k: gg_poly(g, k))
    compare("sobolev", lambda p, q: sobolev_inner(ss, p, q), lambda k: q_poly(ss, k))
    return _log(report)


def determinant_suite(ss: SobolevSystem, n_max: int) -> VerificationReport:
    """3x3 determinant form of ``Q_n`` against the kernel form."""
    report = VerificationReport("determinant")
    tol = tolerance()
    for n in range(n_max + 1):
        _run(report, f"n={n}", lambda: coeff_distance(q_poly_determinant(ss, n), q_poly(ss, n)), tol)
    return _log(report)
