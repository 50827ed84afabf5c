from .formatting import digits_for, fmt_real, jsonable
from .output import dump_json, sidecar_path, write_frame, write_json

__all__ = [
    "digits_for",
    "dump_json",
    "fmt_real",
    "jsonable",
    "sidecar_path",
    "write_frame",
    "write_json",
]
