"""JSON wire format for matrices and the machine-readable job report.

Matrices travel as ``{"rows": r, "cols": c, "data": [[re, im], ...]}`` in
row-major order.  Floats are written with ``repr``, the shortest decimal
that round-trips, so decoding an encoded matrix gives back the same bits.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, is_dataclass
from enum import Enum
from typing import Any

import numpy as np

from .errors import NonFinite, ParseError

SCHEMA_VERSION = 1


def encode_matrix(a) -> dict:
    a = np.atleast_2d(np.asarray(a, dtype=complex))
    if a.ndim != 2:
        raise ParseError("only 2-d arrays have a wire form")
    return {
        "rows": int(a.shape[0]),
        "cols": int(a.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in a.ravel()],
    }


def decode_matrix(obj: Any) -> np.ndarray:
    if not isinstance(obj, dict):
        raise ParseError("matrix must be a JSON object with rows, cols and data")
    try:
        rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    except KeyError as exc:
        raise ParseError(f"matrix is missing field {exc.args[0]!r}") from None
    if not (isinstance(rows, int) and isinstance(cols, int)) or isinstance(rows, bool) or rows < 1 or cols < 1:
        raise ParseError("rows and cols must be positive integers")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise ParseError(f"data must hold rows*cols = {rows * cols} entries")
    out = np.empty(rows * cols, dtype=complex)
    for k, entry in enumerate(data):
        if isinstance(entry, (int, float)) and not isinstance(entry, bool):
            entry = [entry, 0.0]
        if (not isinstance(entry, list) or len(entry) != 2
                or not all(isinstance(t, (int, float)) and not isinstance(t, bool) for t in entry)):
            raise ParseError(f"entry {k} must be [re, im]")
        re, im = float(entry[0]), float(entry[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise NonFinite(f"entry {k} is not finite")
        out[k] = complex(re, im)
    return out.reshape(rows, cols)


def dumps_matrix(a) -> str:
    return json.dumps(encode_matrix(a))


def loads_matrix(text: str) -> np.ndarray:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}") from None
    return decode_matrix(obj)


def to_jsonable(obj: Any) -> Any:
    """Recursively convert numpy values, complex numbers and dataclasses.

    Complex scalars become ``[re, im]``; 2-d arrays use the matrix wire form
    and 1-d arrays become lists of ``[re, im]`` (complex) or plain floats.
    """
    if is_dataclass(obj) and not isinstance(obj, type):
        return to_jsonable(asdict(obj))
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else str(v)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.ndarray):
        if obj.ndim == 2:
            return encode_matrix(obj)
        if np.iscomplexobj(obj):
            return [[float(z.real), float(z.imag)] for z in obj.ravel()]
        return [to_jsonable(v) for v in obj.ravel()]
    if obj is None or isinstance(obj, str):
        return obj
    return str(obj)


REPORT_SCHEMA: dict = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema_version", "command", "holds", "exit_code", "result", "tolerance"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "command": {"type": "string"},
        "subcommand": {"type": ["string", "null"]},
        "norm": {"type": ["string", "null"]},
        "holds": {"type": "boolean"},
        "exit_code": {"enum": [0, 1]},
        "result": {"type": "object"},
        "tolerance": {
            "type": "object",
            "required": ["abs_tol", "rel_tol", "grid_points", "refine_iters"],
            "properties": {
                "abs_tol": {"type": "number"},
                "rel_tol": {"type": "number"},
                "grid_points": {"type": "integer"},
                "refine_iters": {"type": "integer"},
            },
        },
        "oracle": {"type": ["object", "null"]},
        "seed": {"type": ["integer", "null"]},
        "warnings": {"type": "array", "items": {"type": "string"}},
        "elapsed_s": {"type": "number"},
    },
    "additionalProperties": False,
}

ERROR_SCHEMA: dict = {
    "type": "object",
    "required": ["schema_version", "command", "exit_code", "error"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "command": {"type": ["string", "null"]},
        "exit_code": {"const": 2},
        "error": {
            "type": "object",
            "required": ["type", "message"],
            "properties": {"type": {"type": "string"}, "message": {"type": "string"}},
        },
    },
    "additionalProperties": False,
}


def dumps_report(report: dict) -> str:
    return json.dumps(to_jsonable(report), sort_keys=True, indent=2)


__all__ = [
    "ERROR_SCHEMA",
    "REPORT_SCHEMA",
    "SCHEMA_VERSION",
    "decode_matrix",
    "dumps_matrix",
    "dumps_report",
    "encode_matrix",
    "loads_matrix",
    "to_jsonable",
]
