#!/usr/bin/env python3
"""Decimal-string rendering of working-precision values."""

from __future__ import annotations

import math
from typing import Any, Mapping

import numpy as np
from mpmath import mp

from classes.polycore import Real


def digits_for(bits: int) -> int:
    """Significant decimal digits carried by ``bits`` of binary precision."""
    return math.ceil(bits * math.log10(2))


def fmt_real(x: Real, digits: int | None = None) -> str:
    """``x`` as a decimal string; defaults to the digits of ``mp.prec``."""
    return mp.nstr(x, digits or digits_for(mp.prec))


def jsonable(value: Any, digits: int | None = None) -> Any:
    """Recursively replace mpf values by decimal strings."""
    if isinstance(value, mp.mpf):
        return fmt_real(value, digits)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, Mapping):
        return {str(k): jsonable(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v, digits) for v in value]
    return value
