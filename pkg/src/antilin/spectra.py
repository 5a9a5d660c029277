"""Spectrum membership and the fixed-basis structure of unitary conjugations."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOL, Conjugation, RealLinearOp, operator_norm, realify
from .exceptions import DimensionError, NotAntilinearError
from .takagi import takagi

__all__ = [
    "SpectrumQuery",
    "in_spectrum",
    "circular_symmetry_check",
    "conjugation_eigenbasis",
    "eigvec_for_phase",
    "conjugation_transfer",
]


@dataclass(frozen=True)
class SpectrumQuery:
    lam: complex
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")


def smallest_singular_value(op: RealLinearOp, lam=0.0) -> float:
    """Smallest singular value of the realification of ``op - lam``."""
    return float(np.linalg.svd(realify(op.shift(lam)), compute_uv=False)[-1])


def in_spectrum(op: RealLinearOp, q) -> bool:
    """Whether ``op - lam`` fails to be invertible.

    ``q`` is a :class:`SpectrumQuery` or a bare complex number (default
    tolerance).  In finite dimension the spectrum equals the point spectrum,
    and ``op - lam`` is singular iff its realification is.  The threshold is
    ``tol * max(1, ||op||)``.
    """
    if not isinstance(q, SpectrumQuery):
        q = SpectrumQuery(complex(q))
    scale = max(1.0, operator_norm(op))
    return smallest_singular_value(op, q.lam) < q.tol * scale


def circular_symmetry_check(op: RealLinearOp, lam, phases, tol=DEFAULT_TOL) -> bool:
    """True iff ``e^{i theta} lam`` lies in the spectrum for every supplied phase."""
    if not op.is_antilinear():
        raise NotAntilinearError("circular symmetry applies to antilinear operators only")
    return all(in_spectrum(op, SpectrumQuery(np.exp(1j * t) * lam, tol)) for t in phases)


def conjugation_eigenbasis(kappa: Conjugation) -> np.ndarray:
    """Orthonormal basis (columns ``e_n``) with ``kappa e_n = e_n``.

    ``T`` is symmetric unitary, so its Takagi factorization reads
    ``T = U U^T``; then ``T conj(u_j) = U e_j = u_j``.
    """
    if not isinstance(kappa, Conjugation):
        kappa = Conjugation(kappa)
    return takagi(kappa.matrix).u


def eigvec_for_phase(kappa: Conjugation, theta: float) -> np.ndarray:
    """Unit ``v`` with ``kappa v = e^{i theta} v``.

    ``v = e^{-i theta / 2} e_1`` for a fixed vector ``e_1`` of ``kappa``.
    """
    e1 = conjugation_eigenbasis(kappa)[:, 0]
    return np.exp(-0.5j * theta) * e1


def conjugation_transfer(tau: Conjugation, kappa: Conjugation) -> np.ndarray:
    """Complex unitary ``U`` with ``tau = U* kappa U``.

    ``U`` maps the fixed basis of ``tau`` onto the fixed basis of ``kappa``.
    As matrices: ``T_tau = U^H T_kappa conj(U)``.
    """
    if tau.dim != kappa.dim:
        raise DimensionError(f"dimension mismatch: {tau.dim} vs {kappa.dim}")
    e = conjugation_eigenbasis(tau)
    f = conjugation_eigenbasis(kappa)
    return f @ e.conj().T
