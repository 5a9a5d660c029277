"""Singular values and Schatten p-norms of antilinear operators."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import RealLinearOp, as_complex_matrix
from .exceptions import NotAntilinearError

__all__ = ["SchattenParams", "singular_values", "schatten_norm", "rank"]

# singular values below this fraction of the largest count as zero
RANK_RTOL = 1e-14


@dataclass(frozen=True)
class SchattenParams:
    """Exponent ``1 < p < inf``; ``q`` is the conjugate exponent."""

    p: float = 2.0

    def __post_init__(self):
        p = float(self.p)
        if not (1.0 < p < np.inf):
            raise ValueError(f"Schatten exponent must satisfy 1 < p < inf, got {self.p!r}")
        object.__setattr__(self, "p", p)

    @property
    def q(self) -> float:
        return self.p / (self.p - 1.0)


def _antilinear_matrix(a):
    if isinstance(a, RealLinearOp):
        if not a.is_antilinear():
            raise NotAntilinearError(
                "singular values are defined here for antilinear operators only",
                residual=float(np.linalg.norm(a.linear, 2)),
            )
        return np.asarray(a.antilinear)
    return as_complex_matrix(a)


def singular_values(a) -> np.ndarray:
    """Eigenvalues of ``|A| = (A* A)^{1/2}`` in descending order.

    ``A* A`` has matrix ``M^T conj(M)``.  Squaring loses half the digits of
    small values, so ``|A|`` is read off the Hermitian dilation
    ``[[0, M^T], [conj(M), 0]]`` instead: its eigenvalues are ``+-s_j`` with
    ``s_j`` the eigenvalues of ``|A|``.
    """
    m = _antilinear_matrix(a)
    n = m.shape[0]
    z = np.zeros_like(m)
    dilation = np.block([[z, m.T], [m.conj(), z]])
    w = np.linalg.eigvalsh(dilation)[::-1][:n]
    w = np.clip(w, 0.0, None)
    if w[0] > 0:
        w[w < RANK_RTOL * w[0]] = 0.0
    return w


def rank(a) -> int:
    return int(np.count_nonzero(singular_values(a)))


def schatten_norm(a, params=SchattenParams()) -> float:
    """``(sum_j s_j^p)^(1/p)``; ``params`` may also be a bare exponent."""
    if not isinstance(params, SchattenParams):
        params = SchattenParams(params)
    s = singular_values(a)
    if s[0] == 0:
        return 0.0
    # scale first to avoid overflow for large p
    return float(s[0] * np.sum((s / s[0]) ** params.p) ** (1.0 / params.p))
