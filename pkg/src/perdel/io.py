"""Canonical JSON serialization shared by the CLI and the file formats.

Rationals serialize as the string "p/q" (denominator omitted when 1),
matrices as row-major arrays of such strings, and every writer emits
sorted-key compact JSON so identical inputs produce byte-identical files.
"""

from __future__ import annotations

import json

from .errors import InputFormatError
from .linalg import Matrix
from .rationals import format_rational, parse_rational


def canonical_dumps(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"


def form_to_json(q: Matrix) -> dict:
    return {
        "dim": q.rows,
        "matrix": [[format_rational(x) for x in row] for row in q.entries],
    }


def form_from_json(data) -> Matrix:
    try:
        entries = [[parse_rational(str(x)) for x in row] for row in data["matrix"]]
        q = Matrix(entries)
    except (KeyError, TypeError) as exc:
        raise InputFormatError(f"bad form payload: {exc}") from exc
    if "dim" in data and int(data["dim"]) != q.rows:
        raise InputFormatError("declared dimension does not match the matrix")
    if q.rows != q.cols:
        raise InputFormatError("form matrix must be square")
    return q


def load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputFormatError(f"cannot read JSON from {path}: {exc}") from exc
