#!/usr/bin/env python3
"""``opq``: verify identities, run convergence scans, emit figure data and tables.

Exit codes: 0 on success, 1 when a verification case fails, 2 for
configuration or parameter-domain errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import pandas as pd

from analytics.asymptotics import (
    RICHARDSON_POINTS,
    SCAN_KINDS,
    ConvergenceTable,
    derivative_ratio_scan,
    determinant_limit_scan,
    endpoint_limit_scan,
    gamma_ratio_scan,
    geometric_grid,
    kernel_limit_scan,
    norm_limit_scan,
    norm_ratio_scan,
    richardson_limit,
)
from analytics.coefficient_tables import TABLE_KINDS, build_table
from analytics.identity_suites import (
    VerificationReport,
    combine_reports,
    connection_suite,
    determinant_suite,
    five_term_suite,
    measure_suite,
    norm_suite,
    oracle_suite,
    qq_suite,
    s_orthogonality_suite,
    three_term_suite,
)
from classes.errors import ConfigError, DomainError, PrecisionExhaustedError
from classes.geronimus import GGSystem, make_jacobi_gg
from classes.jacobi import JacobiParams, jacobi_system
from classes.opsys import OrthoSystem
from classes.polycore import working_precision
from classes.sobolev import SobolevParams, SobolevSystem
from config import FIGURES, RunConfig, build_config, load_config_file
from logging_utils import get_logger, set_level
from utils.formatting import digits_for, fmt_real
from utils.output import dump_json, sidecar_path, write_frame, write_json

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2

ORACLE_N_MAX = 15
DETERMINANT_N_MAX = 20


@dataclass(frozen=True)
class Instance:
    """Systems built from a config at the current working precision."""

    params: JacobiParams
    sobolev: SobolevParams
    base: OrthoSystem
    ss: SobolevSystem
    gg: Optional[GGSystem]


def build_instance(cfg: RunConfig, need_gg: bool = False) -> Instance:
    p = JacobiParams(cfg.real("alpha"), cfg.real("beta"))
    sp = SobolevParams(cfg.real("M"), cfg.real("N"), cfg.real("a"))
    base = jacobi_system(p)
    g = None
    if sp.a == -1:
        if need_gg or p.beta > 1:
            g = make_jacobi_gg(p)
    elif need_gg:
        raise DomainError("the Jacobi gg instance is defined at a = -1 only")
    return Instance(p, sp, base, SobolevSystem(base, sp), g)


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------
def cmd_verify(cfg: RunConfig) -> VerificationReport:
    """Run every identity suite for the configured parameters."""
    inst = build_instance(cfg, need_gg=cfg.real("a") == -1)
    n = cfg.n_max
    reports = []
    if inst.gg is not None:
        g = inst.gg
        reports += [
            three_term_suite(g, n),
            five_term_suite(g, n),
            connection_suite(g, n),
            norm_suite(g, n),
            measure_suite(g, cfg.seed),
            qq_suite(inst.ss, g, n),
        ]
    else:
        logger.warning("gg suites skipped: a=%s is not the Jacobi gg point -1", cfg.a)
    reports += [
        s_orthogonality_suite(inst.ss, n),
        oracle_suite(inst.ss, inst.gg, min(n, ORACLE_N_MAX)),
        determinant_suite(inst.ss, min(n, DETERMINANT_N_MAX)),
    ]
    report = combine_reports("verify", reports)
    logger.info(
        "verification %s: %d cases, %d failed",
        "passed" if report.overall_pass else "FAILED",
        len(report.cases),
        len(report.failures()),
    )
    return report


def cmd_scan(
    cfg: RunConfig,
    kind: str,
    k: int = 0,
    s: int = 0,
    j: int = 2,
    l: int = 0,
    params: Optional[JacobiParams] = None,
) -> ConvergenceTable:
    """Run one convergence scan on the configured geometric grid."""
    if kind not in SCAN_KINDS:
        raise DomainError(f"unknown scan kind {kind!r}; choose from {SCAN_KINDS}")
    ns = geometric_grid(cfg.scan_n0, cfg.scan_per_octave, cfg.scan_n_max)
    if kind == "gamma":
        return gamma_ratio_scan(k, l, ns)
    p = params or JacobiParams(cfg.real("alpha"), cfg.real("beta"))
    if kind == "endpoint":
        return endpoint_limit_scan(p, k, ns)
    if kind == "norm_limit":
        return norm_limit_scan(p, ns)
    if kind == "kernel":
        return kernel_limit_scan(p, k, s, ns)
    sp = SobolevParams(cfg.real("M"), cfg.real("N"), cfg.real("a"))
    if kind == "deriv_ratio":
        return derivative_ratio_scan(p, sp, j, ns)
    if kind == "norm_ratio":
        return norm_ratio_scan(p, sp, ns)
    return determinant_limit_scan(p, sp, ns)


def figure_metadata(which: str, cfg: RunConfig, table: ConvergenceTable) -> dict:
    digits = digits_for(cfg.precision_bits)
    return {
        "figure": which,
        "kind": table.kind,
        "params": table.meta,
        "limit": fmt_real(table.last.limit, digits),
        "decay_exponent": table.decay_exponent,
        "extrapolated_limit": fmt_real(richardson_limit(table), digits),
        "precision_bits": cfg.precision_bits,
        "grid": {
            "n0": cfg.scan_n0,
            "per_octave": cfg.scan_per_octave,
            "n_max": cfg.scan_n_max,
        },
    }


def cmd_figure(cfg: RunConfig, which: str) -> tuple[ConvergenceTable, dict]:
    """Scan behind a figure plus the metadata written to its sidecar."""
    if which not in FIGURES:
        raise DomainError(f"unknown figure {which!r}; choose from {sorted(FIGURES)}")
    ns = geometric_grid(cfg.scan_n0, cfg.scan_per_octave, cfg.scan_n_max)
    if len(ns) < RICHARDSON_POINTS:
        raise DomainError(
            f"figure {which} needs at least {RICHARDSON_POINTS} grid points for extrapolation, "
            f"got {len(ns)}; raise --scan-n-max or --scan-per-octave"
        )
    preset = FIGURES[which]
    p = JacobiParams(preset["alpha"], preset["beta"])
    table = cmd_scan(cfg, preset["kind"], j=preset["j"], params=p)
    return table, figure_metadata(which, cfg, table)


def cmd_table(cfg: RunConfig, what: str) -> pd.DataFrame:
    if what not in TABLE_KINDS:
        raise DomainError(f"unknown table {what!r}; choose from {TABLE_KINDS}")
    inst = build_instance(cfg, need_gg=what != "recurrence")
    return build_table(what, inst.base, inst.gg, inst.ss, cfg.n_max, digits_for(cfg.precision_bits))


# ----------------------------------------------------------------------
# argument parsing
# ----------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with RunConfig fields")
    common.add_argument("--dump-config", action="store_true", help="print the effective config and exit")
    common.add_argument("--alpha")
    common.add_argument("--beta")
    common.add_argument("--M", dest="M")
    common.add_argument("--N", dest="N")
    common.add_argument("--a", dest="a")
    common.add_argument("--n-max", dest="n_max", type=int)
    common.add_argument("--precision-bits", dest="precision_bits", type=int)
    common.add_argument("--format", dest="output_format", choices=["csv", "json"])
    common.add_argument("--out", dest="output_path")
    common.add_argument("--seed", type=int)
    common.add_argument("--scan-n0", dest="scan_n0", type=int)
    common.add_argument("--scan-per-octave", dest="scan_per_octave", type=int)
    common.add_argument("--scan-n-max", dest="scan_n_max", type=int)
    common.add_argument("--log-level", dest="log_level")

    parser = argparse.ArgumentParser(prog="opq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("verify", parents=[common], help="run the identity suites")

    scan = sub.add_parser("scan", parents=[common], help="run a convergence scan")
    scan.add_argument("--kind", required=True, choices=SCAN_KINDS)
    scan.add_argument("--k", type=int, default=0)
    scan.add_argument("--s", type=int, default=0)
    scan.add_argument("--j", type=int, default=2)
    scan.add_argument("--l", type=int, default=0)

    fig = sub.add_parser("figure", parents=[common], help="emit figure data with a sidecar")
    fig.add_argument("--which", required=True, choices=sorted(FIGURES))

    table = sub.add_parser("table", parents=[common], help="dump coefficient tables")
    table.add_argument("--what", required=True, choices=TABLE_KINDS)
    return parser


CONFIG_FIELDS = (
    "alpha",
    "beta",
    "M",
    "N",
    "a",
    "n_max",
    "precision_bits",
    "output_format",
    "output_path",
    "seed",
    "scan_n0",
    "scan_per_octave",
    "scan_n_max",
    "log_level",
)


def config_from_args(args: argparse.Namespace) -> RunConfig:
    file_values = load_config_file(args.config) if args.config else {}
    cli_values = {name: getattr(args, name) for name in CONFIG_FIELDS}
    return build_config(file_values, cli_values)


def _run(args: argparse.Namespace, cfg: RunConfig) -> int:
    fmt, out = cfg.output_format, cfg.output_path
    digits = digits_for(cfg.precision_bits)
    with working_precision(cfg.precision_bits):
        if args.command == "verify":
            report = cmd_verify(cfg)
            write_frame(
                report.to_frame(),
                out,
                fmt,
                extra={"suite": report.suite, "overall_pass": report.overall_pass},
            )
            return EXIT_OK if report.overall_pass else EXIT_FAILED

        if args.command == "scan":
            t = cmd_scan(cfg, args.kind, k=args.k, s=args.s, j=args.j, l=args.l)
            write_frame(
                t.to_frame(digits),
                out,
                fmt,
                extra={"kind": t.kind, "meta": t.meta, "decay_exponent": t.decay_exponent},
            )
            return EXIT_OK

        if args.command == "figure":
            t, meta = cmd_figure(cfg, args.which)
            path = Path(out or f"{args.which}.{fmt}")
            write_frame(t.to_frame(digits), path, fmt, extra={"kind": t.kind, "meta": t.meta})
            write_json(meta, sidecar_path(path))
            return EXIT_OK

        df = cmd_table(cfg, args.what)
        write_frame(df, out, fmt, extra={"table": args.what})
        return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
    except ConfigError as exc:
        logger.error("invalid configuration: %s", exc)
        return EXIT_CONFIG
    set_level(cfg.log_level)

    if args.dump_config:
        sys.stdout.write(dump_json(cfg.to_dict()))
        return EXIT_OK

    try:
        return _run(args, cfg)
    except (DomainError, ConfigError) as exc:
        logger.error("%s", exc)
        return EXIT_CONFIG
    except PrecisionExhaustedError as exc:
        logger.error("precision exhausted: %s", exc)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
