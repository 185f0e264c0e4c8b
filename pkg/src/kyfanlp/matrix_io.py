"""JSON matrix files and report serialization.

A matrix file is ``{"d": n, "re": [[...]], "im": [[...]]}``; ``im`` may be
omitted for real matrices.  Floats are written with 17 significant digits so
that every value round-trips exactly.
"""
from __future__ import annotations

import json
import math

import numpy as np

from .spectral import as_hermitian

__all__ = ["MatrixFileError", "parse_matrix", "load_matrix", "matrix_to_dict", "save_matrix", "dumps"]


class MatrixFileError(ValueError):
    """Malformed or non-Hermitian matrix file."""


def parse_matrix(obj):
    if not isinstance(obj, dict) or "d" not in obj or "re" not in obj:
        raise MatrixFileError("matrix file needs fields 'd' and 're'")
    d = obj["d"]
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise MatrixFileError(f"'d' must be a positive integer, got {d!r}")
    try:
        re = np.array(obj["re"], dtype=float)
        im = np.array(obj["im"], dtype=float) if obj.get("im") is not None else np.zeros((d, d))
    except (TypeError, ValueError) as exc:
        raise MatrixFileError(f"matrix entries must be numbers: {exc}") from None
    if re.shape != (d, d) or im.shape != (d, d):
        raise MatrixFileError(f"'re' and 'im' must be {d}x{d}, got {re.shape} and {im.shape}")
    if not (np.all(np.isfinite(re)) and np.all(np.isfinite(im))):
        raise MatrixFileError("matrix entries must be finite")
    try:
        return as_hermitian(re + 1j * im)
    except ValueError as exc:
        raise MatrixFileError(str(exc)) from None


def load_matrix(path):
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise MatrixFileError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"{path} is not valid JSON: {exc}") from None
    return parse_matrix(obj)


def matrix_to_dict(H):
    H = np.asarray(H, dtype=complex)
    out = {"d": int(H.shape[0]), "re": H.real.tolist()}
    if np.any(H.imag != 0):
        out["im"] = H.imag.tolist()
    return out


def save_matrix(path, H):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(matrix_to_dict(H)))
        fh.write("\n")


def _encode(obj):
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    if isinstance(obj, np.ndarray):
        return _encode(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return format(x, ".17g") if math.isfinite(x) else "null"
    if obj is None:
        return "null"
    return json.dumps(obj, ensure_ascii=False)


def dumps(obj) -> str:
    """JSON text with every float printed to 17 significant digits."""
    return _encode(obj)
