#!/usr/bin/env python3
"""Run configuration for the ``opq`` command line tool.

Values are resolved in the order CLI flags > JSON config file >
environment (``.env`` is honoured) > defaults below.
"""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Mapping

from dotenv import load_dotenv
from mpmath import mp

from classes.errors import ConfigError
from classes.polycore import MIN_PRECISION_BITS, Real

# Set base directory to the current location of config.py
Base_dir = os.path.dirname(os.path.abspath(__file__))

load_dotenv(os.path.join(Base_dir, ".env"))

DEFAULT_PRECISION_BITS = int(os.getenv("OPQ_PRECISION_BITS", "256"))

OUTPUT_FORMATS = ("csv", "json")

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

# figure configurations: alpha, beta, j
FIGURES = {
    "fig1a": {"kind": "deriv_ratio", "alpha": "0", "beta": "1", "j": 2},
    "fig1b": {"kind": "norm_ratio", "alpha": "0", "beta": "1", "j": 0},
}


@dataclass(frozen=True)
class RunConfig:
    """Parameters shared by every ``opq`` command.

    Real parameters are kept as decimal strings and converted with
    :meth:`real` only after the working precision has been set, so that
    they are exact at that precision.
    """

    precision_bits: int = DEFAULT_PRECISION_BITS
    alpha: str = "0.5"
    beta: str = "2.5"
    M: str = "1"
    N: str = "1"
    a: str = "-1"
    n_max: int = 30
    output_format: str = "csv"
    output_path: str | None = None
    seed: int = 0
    scan_n0: int = 16
    scan_per_octave: int = 2
    scan_n_max: int = 4096
    log_level: str = "INFO"

    def real(self, name: str) -> Real:
        """Return the decimal field ``name`` as a Real at the current precision."""
        raw = getattr(self, name)
        try:
            return mp.mpf(raw)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{name}={raw!r} is not a decimal number") from exc

    def validate(self) -> "RunConfig":
        """Check every field before any computation; return ``self``."""
        if self.precision_bits < MIN_PRECISION_BITS:
            raise ConfigError(
                f"precision_bits must be >= {MIN_PRECISION_BITS}, got {self.precision_bits}"
            )
        if self.n_max < 1:
            raise ConfigError(f"n_max must be >= 1, got {self.n_max}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(f"output_format must be one of {OUTPUT_FORMATS}")
        if self.log_level.upper() not in LOG_LEVELS:
            raise ConfigError(f"log_level must be one of {LOG_LEVELS}, got {self.log_level!r}")
        if self.scan_n0 < 1 or self.scan_per_octave < 1 or self.scan_n_max < self.scan_n0:
            raise ConfigError("scan grid needs 1 <= scan_n0 <= scan_n_max and scan_per_octave >= 1")
        with mp.workprec(self.precision_bits):
            for name in ("alpha", "beta", "M", "N", "a"):
                self.real(name)
            if self.real("M") < 0:
                raise ConfigError(f"M must be >= 0, got {self.M}")
            if self.real("N") < 0:
                raise ConfigError(f"N must be >= 0, got {self.N}")
            if self.real("alpha") <= -1 or self.real("beta") <= -1:
                raise ConfigError("alpha and beta must both be > -1")
        return self

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def _coerce(name: str, value: Any) -> Any:
    kind = {f.name: f.type for f in fields(RunConfig)}[name]
    if value is None:
        return None
    try:
        if kind == "int":
            return int(value)
        if kind == "str" or kind == "str | None":
            return str(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{name}={value!r} has the wrong type") from exc
    return value


def load_config_file(path: str | Path) -> dict[str, Any]:
    """Read a JSON config file into a dict of RunConfig overrides."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"Config file not found: {path}")
    try:
        with open(path, "r") as file:
            data = json.load(file)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"Config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"Config file {path} must hold a JSON object")
    return data


def build_config(
    file_values: Mapping[str, Any] | None = None,
    cli_values: Mapping[str, Any] | None = None,
) -> RunConfig:
    """Merge config-file and CLI overrides onto the defaults and validate."""
    known = {f.name for f in fields(RunConfig)}
    merged: dict[str, Any] = {}
    for source in (file_values or {}, cli_values or {}):
        for key, value in source.items():
            if key not in known:
                raise ConfigError(f"Unknown config key: {key}")
            if value is not None:
                merged[key] = _coerce(key, value)
    return replace(RunConfig(), **merged).validate()
