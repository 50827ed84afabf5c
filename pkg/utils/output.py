#!/usr/bin/env python3
"""Writers for tables, reports and figure sidecars.

CSV goes through ``pandas`` with ``\\n`` line endings and no index, JSON is
written with sorted keys. Nothing time-dependent is emitted, so a fixed
configuration gives byte-identical files.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Any, Optional

import pandas as pd

from logging_utils import get_logger

from .formatting import jsonable

logger = get_logger(__name__)


def sidecar_path(path: str | Path) -> Path:
    """``<out>.meta.json`` next to ``path``."""
    path = Path(path)
    return path.with_name(path.name + ".meta.json")


def dump_json(payload: Any) -> str:
    return json.dumps(jsonable(payload), indent=2, sort_keys=True) + "\n"


def _emit(text: str, path: Optional[str | Path]) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(text)
    logger.info("wrote %s", path)


def write_frame(
    df: pd.DataFrame,
    path: Optional[str | Path],
    fmt: str = "csv",
    extra: Optional[dict] = None,
) -> None:
    """Write ``df`` as CSV, or as JSON ``{"rows": [...], **extra}``."""
    if fmt == "csv":
        _emit(df.to_csv(index=False, lineterminator="\n"), path)
    elif fmt == "json":
        payload = dict(extra or {})
        payload["rows"] = df.to_dict(orient="records")
        _emit(dump_json(payload), path)
    else:
        raise ValueError(f"unknown output format {fmt!r}")


def write_json(payload: Any, path: Optional[str | Path]) -> None:
    _emit(dump_json(payload), path)
