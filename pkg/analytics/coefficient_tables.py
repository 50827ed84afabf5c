#!/usr/bin/env python3
"""Coefficient tables for ``n = 0 .. n_max`` as decimal-string frames."""

from __future__ import annotations

from typing import Callable, Optional

import pandas as pd
from mpmath import mp

from classes.errors import DomainError
from classes.geronimus import (
    CLOSED_FORM,
    GGSystem,
    base_to_gg_connection,
    gg_five_term,
    gg_three_term,
)
from classes.opsys import OrthoSystem
from classes.sobolev import SobolevSystem, qq_connection

TABLE_KINDS = (
    "recurrence",
    "gg_expansion",
    "connection",
    "qq_connection",
    "three_term",
    "five_term",
)


def _fmt(digits: int) -> Callable:
    return lambda x: mp.nstr(x, digits)


def recurrence_table(sys: OrthoSystem, n_max: int, digits: int) -> pd.DataFrame:
    f = _fmt(digits)
    rows = [
        {
            "n": n,
            "beta_n": f(sys.beta(n)),
            "gamma_n": f(sys.gamma(n)) if n >= 1 else "",
            "provenance": CLOSED_FORM,
        }
        for n in range(n_max + 1)
    ]
    return pd.DataFrame(rows, columns=["n", "beta_n", "gamma_n", "provenance"])


def gg_expansion_table(g: GGSystem, n_max: int, digits: int) -> pd.DataFrame:
    f = _fmt(digits)
    rows = [
        {"n": n, "B": f(g.B(n)), "C": f(g.C(n)), "provenance": CLOSED_FORM}
        for n in range(n_max + 1)
    ]
    return pd.DataFrame(rows, columns=["n", "B", "C", "provenance"])


def connection_table(g: GGSystem, n_max: int, digits: int) -> pd.DataFrame:
    f = _fmt(digits)
    rows = []
    for n in range(n_max + 1):
        c = base_to_gg_connection(g, n)
        rows.append(
            {"n": n, "sigma_pp1": f(c.s_pp1), "sigma_p0": f(c.s_p0), "provenance": c.provenance}
        )
    return pd.DataFrame(rows, columns=["n", "sigma_pp1", "sigma_p0", "provenance"])


def three_term_table(g: GGSystem, n_max: int, digits: int) -> pd.DataFrame:
    f = _fmt(digits)
    rows = []
    for n in range(n_max + 1):
        c = gg_three_term(g, n)
        rows.append(
            {"n": n, "sigma_nn": f(c.sigma_nn), "sigma_nm1": f(c.sigma_nm1), "provenance": c.provenance}
        )
    return pd.DataFrame(rows, columns=["n", "sigma_nn", "sigma_nm1", "provenance"])


def five_term_table(g: GGSystem, n_max: int, digits: int) -> pd.DataFrame:
    f = _fmt(digits)
    rows = []
    for n in range(n_max + 1):
        c = gg_five_term(g, n)
        rows.append(
            {
                "n": n,
                "a_pp1": f(c.a_pp1),
                "a_p0": f(c.a_p0),
                "a_m1": f(c.a_m1),
                "a_m2": f(c.a_m2),
                "provenance": c.provenance,
            }
        )
    return pd.DataFrame(rows, columns=["n", "a_pp1", "a_p0", "a_m1", "a_m2", "provenance"])


def qq_connection_table(ss: SobolevSystem, g: GGSystem, n_max: int, digits: int) -> pd.DataFrame:
    """Named Q-to-gg coefficients; ``lower`` is ``;``-joined, lowest degree first."""
    f = _fmt(digits)
    rows = []
    for n in range(n_max + 1):
        c = qq_connection(ss, g, n)
        rows.append(
            {
                "n": n,
                "a_pp1": f(c.a_pp1),
                "a_p0": f(c.a_p0),
                "a_m1": f(c.a_m1),
                "a_m2": f(c.a_m2),
                "lower": ";".join(f(v) for v in c.lower),
                "provenance": c.provenance,
            }
        )
    return pd.DataFrame(rows, columns=["n", "a_pp1", "a_p0", "a_m1", "a_m2", "lower", "provenance"])


def build_table(
    what: str,
    base: OrthoSystem,
    g: Optional[GGSystem],
    ss: Optional[SobolevSystem],
    n_max: int,
    digits: int,
) -> pd.DataFrame:
    """Dispatch on ``what``; gg tables need ``g`` and the qq table ``ss`` too."""
    if what not in TABLE_KINDS:
        raise DomainError(f"unknown table {what!r}; choose from {TABLE_KINDS}")
    if what == "recurrence":
        return recurrence_table(base, n_max, digits)
    if g is None:
        raise DomainError(f"table {what!r} needs the gg transformation (a = -1, beta > 1)")
    if what == "gg_expansion":
        return gg_expansion_table(g, n_max, digits)
    if what == "connection":
        return connection_table(g, n_max, digits)
    if what == "three_term":
        return three_term_table(g, n_max, digits)
    if what == "five_term":
        return five_term_table(g, n_max, digits)
    if ss is None:
        raise DomainError("qq_connection table needs Sobolev parameters")
    return qq_connection_table(ss, g, n_max, digits)
