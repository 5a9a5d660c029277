"""JSON exchange format.

* complex scalar: ``[re, im]``
* matrix: row-major nested lists of complex scalars
* real-linear operator: ``{"dim": n, "linear": [...], "antilinear": [...]}``
* conjugation: ``{"dim": n, "matrix": [...]}``
"""

from __future__ import annotations

import json

import numpy as np

from .core import Conjugation, RealLinearOp
from .exceptions import AntilinError, DimensionError

__all__ = [
    "encode_scalar",
    "decode_scalar",
    "encode_matrix",
    "decode_matrix",
    "encode_vector",
    "encode_op",
    "decode_op",
    "encode_conjugation",
    "decode_conjugation",
    "dumps",
]


def _clean(x):
    # -0.0 and 0.0 must serialize identically
    x = float(x)
    return 0.0 if x == 0 else x


def encode_scalar(z):
    z = complex(z)
    return [_clean(z.real), _clean(z.imag)]


def decode_scalar(v):
    if isinstance(v, (int, float)):
        return complex(v)
    if not (isinstance(v, (list, tuple)) and len(v) == 2):
        raise AntilinError(f"complex scalar must be [re, im], got {v!r}")
    return complex(float(v[0]), float(v[1]))


def encode_vector(x):
    return [encode_scalar(z) for z in np.asarray(x).ravel()]


def encode_matrix(a):
    a = np.asarray(a)
    return [[encode_scalar(z) for z in row] for row in a]


def decode_matrix(rows, dim=None):
    if not isinstance(rows, list) or not rows:
        raise AntilinError("matrix must be a non-empty list of rows")
    n = len(rows)
    out = np.empty((n, n), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise DimensionError(f"row {i} does not have {n} entries")
        out[i] = [decode_scalar(v) for v in row]
    if dim is not None and int(dim) != n:
        raise DimensionError(f"declared dim {dim} but matrix is {n} x {n}")
    return out


def encode_op(op: RealLinearOp):
    return {
        "dim": op.dim,
        "linear": encode_matrix(op.linear),
        "antilinear": encode_matrix(op.antilinear),
    }


def decode_op(obj) -> RealLinearOp:
    """Read a real-linear operator; a conjugation object reads as ``(0, T)``."""
    if "antilinear" in obj or "linear" in obj:
        dim = obj.get("dim")
        if "antilinear" in obj:
            m = decode_matrix(obj["antilinear"], dim)
            c = decode_matrix(obj["linear"], dim) if "linear" in obj else np.zeros_like(m)
        else:
            c = decode_matrix(obj["linear"], dim)
            m = np.zeros_like(c)
        return RealLinearOp(c, m)
    if "matrix" in obj:
        return RealLinearOp.pure_antilinear(decode_matrix(obj["matrix"], obj.get("dim")))
    raise AntilinError("expected an operator object with 'antilinear'/'linear' or 'matrix'")


def encode_conjugation(tau: Conjugation):
    return {"dim": tau.dim, "matrix": encode_matrix(tau.matrix)}


def decode_conjugation(obj, tol=1e-8) -> Conjugation:
    if "matrix" in obj:
        return Conjugation(decode_matrix(obj["matrix"], obj.get("dim")), tol=tol)
    op = decode_op(obj)
    return Conjugation(op.antilinear, tol=tol)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=False, indent=None, separators=(",", ":")) + "\n"
