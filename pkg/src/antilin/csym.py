"""Complex symmetric operators and their antilinear self-adjoint counterparts.

A complex-linear ``S`` is tau-symmetric when ``tau S* tau = S``.  Then
``S o tau`` is self-adjoint antilinear, and conversely ``A o tau`` is
tau-symmetric for self-adjoint antilinear ``A``.  All compositions here are
formed as real-linear maps, so nothing assumes ``tau`` is the entrywise
conjugation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (
    DEFAULT_TOL,
    Conjugation,
    RealLinearOp,
    adjoint,
    as_complex_matrix,
    compose,
    operator_norm,
    standard_conjugation,
)
from .exceptions import AntilinError, DimensionError, NotOrthonormalError, NotSymmetricError
from .schatten import SchattenParams, schatten_norm
from .spectra import conjugation_eigenbasis
from .wvn import wvn_decompose

__all__ = [
    "TauSymmetricOp",
    "CondiagApprox",
    "FactorApprox",
    "tau_symmetry_residual",
    "is_tau_symmetric",
    "to_antilinear",
    "to_csym",
    "bridge",
    "tau_transpose",
    "approx_condiag",
    "approx_factor",
    "relative_state",
]


def tau_transpose(u, tau: Conjugation) -> RealLinearOp:
    """``tau o U* o tau``; reduces to ``U.T`` for the standard conjugation."""
    u_op = u if isinstance(u, RealLinearOp) else RealLinearOp.complex_linear(u)
    return compose(tau.op, compose(adjoint(u_op), tau.op))


def tau_symmetry_residual(s, tau: Conjugation) -> float:
    s_op = s if isinstance(s, RealLinearOp) else RealLinearOp.complex_linear(s)
    if s_op.dim != tau.dim:
        raise DimensionError(f"dimension mismatch: {s_op.dim} vs {tau.dim}")
    return operator_norm(tau_transpose(s_op, tau) - s_op)


def is_tau_symmetric(s, tau: Conjugation, tol=DEFAULT_TOL) -> bool:
    s = as_complex_matrix(s)
    return tau_symmetry_residual(s, tau) <= tol * max(1.0, float(np.linalg.norm(s, 2)))


@dataclass(frozen=True, eq=False)
class TauSymmetricOp:
    """Complex-linear ``matrix`` with ``tau S* tau = S``, checked on construction."""

    matrix: np.ndarray
    tau: Conjugation
    tol: float = field(default=DEFAULT_TOL, repr=False)

    def __post_init__(self):
        s = as_complex_matrix(self.matrix)
        res = tau_symmetry_residual(s, self.tau)
        if res > self.tol * max(1.0, float(np.linalg.norm(s, 2))):
            raise NotSymmetricError("operator is not tau-symmetric", residual=res)
        s = np.array(s)
        s.setflags(write=False)
        object.__setattr__(self, "matrix", s)

    @property
    def op(self):
        return RealLinearOp.complex_linear(self.matrix)


def to_antilinear(s: TauSymmetricOp) -> RealLinearOp:
    """``S o tau``, with matrix ``S T``."""
    return compose(s.op, s.tau.op)


def to_csym(a: RealLinearOp, tau: Conjugation, tol=DEFAULT_TOL) -> TauSymmetricOp:
    """``A o tau``, with matrix ``M_A conj(T)``."""
    m = np.asarray(a.antilinear)
    if not a.is_antilinear(tol):
        raise AntilinError("operator has a nonzero complex-linear part")
    sym = float(np.linalg.norm(m - m.T, 2))
    if sym > tol * max(1.0, float(np.linalg.norm(m, 2))):
        raise NotSymmetricError("operator is not self-adjoint", residual=sym)
    return TauSymmetricOp(compose(a, tau.op).linear, tau, tol)


def bridge(obj, direction, tau: Conjugation = None, tol=DEFAULT_TOL):
    """Move between tau-symmetric and self-adjoint antilinear operators.

    ``direction="to_antilinear"`` takes a :class:`TauSymmetricOp`;
    ``direction="to_csym"`` takes a self-adjoint antilinear operator and
    ``tau``.  The two directions undo each other because ``tau^2 = I``.
    """
    if direction == "to_antilinear":
        if not isinstance(obj, TauSymmetricOp):
            raise TypeError("to_antilinear expects a TauSymmetricOp")
        return to_antilinear(obj)
    if direction == "to_csym":
        if tau is None:
            raise TypeError("to_csym needs a conjugation")
        return to_csym(obj, tau, tol)
    raise ValueError(f"unknown direction {direction!r}")


@dataclass(frozen=True, eq=False)
class CondiagApprox:
    """``S ~ U D tau U* tau`` with ``D`` diagonal in the tau-fixed basis."""

    u: np.ndarray
    d: np.ndarray
    values: np.ndarray
    tau_basis: np.ndarray
    operator_error: float
    schatten_error: float
    achieved_norm: float


@dataclass(frozen=True, eq=False)
class FactorApprox:
    """``S ~ tau D kappa`` with ``D`` and ``kappa`` diagonal in ``basis``."""

    kappa: Conjugation
    d: np.ndarray
    values: np.ndarray
    basis: np.ndarray
    schatten_error: float
    achieved_norm: float


def _coerce(s, tau, tol):
    if isinstance(s, TauSymmetricOp):
        return s
    tau = tau if tau is not None else standard_conjugation(np.asarray(s).shape[0])
    return TauSymmetricOp(s, tau, tol)


def approx_condiag(s, epsilon, params=SchattenParams(), tau=None, tol=DEFAULT_TOL) -> CondiagApprox:
    """Unitary ``U`` and diagonal ``D >= 0`` with ``||S - U D tau U* tau|| < epsilon``.

    ``S tau`` is decomposed as ``D~ + K`` with ``||K||_p < epsilon``; if
    ``D~ f_n = d_n f_n`` and ``tau e_n = e_n`` then ``U e_n = f_n`` and
    ``D = sum d_n e_n e_n^H``.  Both the operator-norm and the Schatten-norm
    error of the approximation are reported.
    """
    s = _coerce(s, tau, tol)
    if not isinstance(params, SchattenParams):
        params = SchattenParams(params)
    a = to_antilinear(s)
    dec = wvn_decompose(a, epsilon, params, tol)
    f, values = dec.basis, dec.values
    e = conjugation_eigenbasis(s.tau)
    u = f @ e.conj().T
    d = (e * values) @ e.conj().T
    approx = compose(RealLinearOp.complex_linear(u @ d), tau_transpose(u, s.tau))
    diff = s.op - approx
    # (S - S') tau is antilinear and has the same singular values as S - S'
    return CondiagApprox(
        u=u,
        d=d,
        values=values,
        tau_basis=e,
        operator_error=operator_norm(diff),
        schatten_error=schatten_norm(compose(diff, s.tau.op), params),
        achieved_norm=dec.achieved_norm,
    )


def approx_factor(s, epsilon, params=SchattenParams(), tau=None, tol=DEFAULT_TOL) -> FactorApprox:
    """Conjugation ``kappa`` and diagonal ``D >= 0`` with ``||S - tau D kappa||_p < epsilon``.

    ``tau S`` is decomposed as ``D~ + K``; with eigenbasis ``f_n`` of ``D~``,
    ``kappa`` is the conjugation fixing every ``f_n`` and ``D = sum d_n f_n f_n^H``
    so that ``D~ = D kappa``.  The error is the Schatten norm of the
    antilinear operator ``tau S - D kappa``.
    """
    s = _coerce(s, tau, tol)
    if not isinstance(params, SchattenParams):
        params = SchattenParams(params)
    a = compose(s.tau.op, s.op)
    dec = wvn_decompose(a, epsilon, params, tol)
    f, values = dec.basis, dec.values
    k_mat = f @ f.T
    kappa = Conjugation((k_mat + k_mat.T) / 2, tol=max(tol, 1e-10))
    d = (f * values) @ f.conj().T
    diff = a - compose(RealLinearOp.complex_linear(d), kappa.op)
    return FactorApprox(
        kappa=kappa,
        d=d,
        values=values,
        basis=f,
        schatten_error=schatten_norm(diff, params),
        achieved_norm=dec.achieved_norm,
    )


def relative_state(coefficients, basis, tol=DEFAULT_TOL) -> RealLinearOp:
    """Relative state operator of ``sigma = sum_ij T_ij e_i (x) e_j``.

    Expanding the second factor in the orthonormal ``basis`` (columns ``f_n``)
    gives ``sigma = sum_n v_n (x) f_n`` with ``v_n = T conj(F) e_n``.  The
    antilinear ``L`` with ``L f_n = v_n`` is returned; its matrix is ``T``
    whatever the basis.
    """
    t = as_complex_matrix(coefficients, "coefficients")
    f = as_complex_matrix(basis, "basis")
    if f.shape != t.shape:
        raise DimensionError("basis and coefficient matrix differ in dimension")
    res = float(np.linalg.norm(f.conj().T @ f - np.eye(f.shape[0]), 2))
    if res > tol:
        raise NotOrthonormalError("basis is not orthonormal", residual=res)
    v = t @ f.conj()
    # L f_n = M conj(f_n) = v_n  =>  M conj(F) = V  =>  M = V F^T
    return RealLinearOp.pure_antilinear(v @ f.T)
