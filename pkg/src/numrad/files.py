"""Matrix JSON files, boundary CSV, and number formatting for printed output.

A matrix file looks like::

    {"n": 2, "name": "nilpotent",
     "entries": [[[0, 0], [1, 0]],
                 [[0, 0], [0, 0]]]}

with each entry a ``[re, im]`` pair of decimal numbers.
"""

import hashlib
import json
import math

import numpy as np

SIG_DIGITS = 12


class MatrixFileError(ValueError):
    """Malformed matrix file. ``field`` names the offending JSON path."""

    def __init__(self, field, msg):
        super().__init__(f"{field}: {msg}")
        self.field = field


def _reject_constant(name):
    raise MatrixFileError("entries", f"non-finite literal {name}")


def _number(value, field):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise MatrixFileError(field, f"expected a number, got {value!r}")
    if not math.isfinite(value):
        raise MatrixFileError(field, "value is not finite")
    return float(value)


def parse_matrix(text):
    """Parse matrix-file JSON text into ``(matrix, name)``."""
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise MatrixFileError("document", f"invalid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise MatrixFileError("document", "top level must be an object")
    n = doc.get("n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise MatrixFileError("n", f"expected a positive integer, got {n!r}")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise MatrixFileError("name", "expected a string")
    rows = doc.get("entries")
    if not isinstance(rows, list) or len(rows) != n:
        raise MatrixFileError("entries", f"expected a list of {n} rows")
    M = np.empty((n, n), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise MatrixFileError(f"entries[{i}]", f"expected a row of {n} entries")
        for j, entry in enumerate(row):
            field = f"entries[{i}][{j}]"
            if not isinstance(entry, list) or len(entry) != 2:
                raise MatrixFileError(field, "expected a [re, im] pair")
            M[i, j] = complex(_number(entry[0], field), _number(entry[1], field))
    return M, name


def read_matrix(path):
    """Read a matrix file; returns ``(matrix, name, sha256 hex digest)``."""
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise MatrixFileError("document", "not valid UTF-8") from exc
    M, name = parse_matrix(text)
    return M, name, hashlib.sha256(raw).hexdigest()


def serialize_matrix(M, name=None):
    """Matrix-file JSON for ``M``. Python's float repr round-trips exactly."""
    M = np.asarray(M, dtype=complex)
    doc = {"n": int(M.shape[0])}
    if name is not None:
        doc["name"] = name
    doc["entries"] = [[[float(z.real), float(z.imag)] for z in row] for row in M]
    return json.dumps(doc)


def write_matrix(path, M, name=None):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_matrix(M, name) + "\n")


def sig(x):
    """Round to 12 significant digits (for JSON output)."""
    return float(f"{float(x):.{SIG_DIGITS}g}") + 0.0  # no negative zeros


def fmt(x):
    """Text rendering: 12 decimals in the ordinary range, 12 significant digits otherwise."""
    x = float(x) + 0.0
    if x == 0 or 1e-3 <= abs(x) < 1e12:
        return f"{x:.12f}"
    return f"{x:.{SIG_DIGITS - 1}e}"


def complex_pair(z):
    return [sig(z.real), sig(z.imag)]


def vector_pairs(v):
    return [complex_pair(z) for z in np.asarray(v, dtype=complex)]


def boundary_csv(boundary):
    """CSV text (LF endings) with header ``theta,re,im,support``."""
    lines = ["theta,re,im,support"]
    for s in boundary.samples:
        lines.append(",".join(f"{v:.{SIG_DIGITS}g}" for v in
                              (s.theta, s.point.real, s.point.imag, s.support_value)))
    return "\n".join(lines) + "\n"
