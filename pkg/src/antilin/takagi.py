"""Takagi factorization and the diagonalizations built on it.

For a complex symmetric ``M`` the Takagi factorization is
``M = U @ diag(d) @ U.T`` with ``U`` unitary and ``d >= 0`` descending.  The
columns of ``U`` are then eigenvectors of the antilinear operator
``x -> M conj(x)`` with the nonnegative eigenvalues ``d``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .core import DEFAULT_TOL, RealLinearOp, as_complex_matrix, inner, realify
from .exceptions import (
    ConvergenceError,
    DimensionError,
    HypothesisViolation,
    NotAntilinearError,
    NotSymmetricError,
)

__all__ = [
    "TakagiFactorization",
    "AntilinearEigensystem",
    "takagi",
    "antilinear_eig",
    "common_eigenvector",
    "diagonalize_commuting_pair",
    "orthonormal_complement",
    "cluster_values",
]

# singular values at or below this fraction of the largest are treated as 0
_NULL_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class TakagiFactorization:
    u: np.ndarray
    d: np.ndarray

    def reconstruct(self):
        return (self.u * self.d) @ self.u.T


@dataclass(frozen=True, eq=False)
class AntilinearEigensystem:
    """Orthonormal ``basis`` (columns) with ``A basis[:, j] = values[j] basis[:, j]``."""

    basis: np.ndarray
    values: np.ndarray


def orthonormal_complement(x):
    """Orthonormal basis (columns) of the orthocomplement of ``range(x)``.

    ``x`` is n x k with orthonormal columns.
    """
    n, k = x.shape
    if k == 0:
        return np.eye(n, dtype=complex)
    if k >= n:
        return np.zeros((n, 0), dtype=complex)
    u, _, _ = np.linalg.svd(x, full_matrices=True)
    return u[:, k:]


def _polar_unitary(x):
    w, _, vh = np.linalg.svd(x, full_matrices=False)
    return w @ vh


def check_symmetric(m, tol=DEFAULT_TOL):
    m = as_complex_matrix(m)
    res = float(np.linalg.norm(m - m.T, 2))
    scale = float(np.linalg.norm(m, 2))
    if res > tol * max(scale, np.finfo(float).tiny):
        raise NotSymmetricError("matrix is not complex symmetric", residual=res)
    return m


def takagi(m, tol=DEFAULT_TOL) -> TakagiFactorization:
    """Takagi factorization of a complex symmetric matrix.

    The antilinear map ``x -> M conj(x)`` realifies to the real symmetric
    matrix ``[[Re M, Im M], [Im M, -Re M]]`` whose spectrum is ``{+-d_j}``.
    An eigenvector ``[a; b]`` for ``+d_j`` gives the Takagi vector ``a + ib``.
    A symmetric eigensolver handles repeated singular values without any
    cluster bookkeeping.  Columns for (numerically) zero singular values are an
    orthonormal completion of the rest.

    Parameters
    ----------
    m : (n, n) array_like
        Complex symmetric matrix; ``||M - M.T|| <= tol * ||M||`` is required.
    tol : float
        Relative symmetry tolerance.

    Returns
    -------
    TakagiFactorization
        ``u`` unitary, ``d`` nonnegative and descending.

    Raises
    ------
    NotSymmetricError
        If ``m`` is not symmetric to ``tol``.
    ConvergenceError
        If the underlying eigensolver fails.
    """
    m = check_symmetric(m, tol)
    n = m.shape[0]
    m = (m + m.T) / 2
    r = realify(RealLinearOp.pure_antilinear(m))
    try:
        w, v = np.linalg.eigh(r)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise ConvergenceError(f"symmetric eigensolver failed: {exc}") from exc

    w = w[::-1][:n]
    v = v[:, ::-1][:, :n]
    smax = max(w[0], 0.0)
    keep = w > _NULL_RTOL * smax if smax > 0 else np.zeros(n, dtype=bool)
    k = int(np.count_nonzero(keep))

    x = v[:n, :k] + 1j * v[n:, :k]
    if k:
        # the +d and -d eigenspaces are orthogonal, so x is already unitary up
        # to rounding; the polar factor removes the rounding
        x = _polar_unitary(x)
    u = np.hstack([x, orthonormal_complement(x)])
    d = np.concatenate([w[:k], np.zeros(n - k)])
    return TakagiFactorization(u=u, d=d)


def antilinear_eig(a: RealLinearOp, tol=DEFAULT_TOL) -> AntilinearEigensystem:
    """Orthonormal eigenbasis of a self-adjoint antilinear operator.

    The values are nonnegative: a phase ``e^{i theta}`` of an eigenvalue is
    absorbed into the vector as ``e^{i theta / 2}``.
    """
    if not a.is_antilinear(tol):
        raise NotAntilinearError("operator has a nonzero complex-linear part",
                                 residual=float(np.linalg.norm(a.linear, 2)))
    f = takagi(a.antilinear, tol)
    return AntilinearEigensystem(basis=f.u, values=f.d)


def cluster_values(values, gap):
    """Single-linkage clusters of complex values: indices grouped by ``|z_i - z_j| <= gap``."""
    values = np.asarray(values)
    n = len(values)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(values[i] - values[j]) <= gap:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _check_pair(n_mat, m_s, tol):
    scale = max(1.0, np.linalg.norm(n_mat, 2)) * max(1.0, np.linalg.norm(m_s, 2))
    normal = np.linalg.norm(n_mat @ n_mat.conj().T - n_mat.conj().T @ n_mat, 2)
    if normal > tol * max(1.0, np.linalg.norm(n_mat, 2)) ** 2:
        raise HypothesisViolation("N is not normal", residual=float(normal))
    sym = np.linalg.norm(m_s - m_s.T, 2)
    if sym > tol * max(1.0, np.linalg.norm(m_s, 2)):
        raise NotSymmetricError("S is not self-adjoint", residual=float(sym))
    # N S = S N*  <=>  N M_S = M_S conj(N*) = M_S N^T
    comm = np.linalg.norm(n_mat @ m_s - m_s @ n_mat.T, 2)
    if comm > tol * scale:
        raise HypothesisViolation("N S != S N*", residual=float(comm))


def _as_antilinear_matrix(s, tol):
    if isinstance(s, RealLinearOp):
        if not s.is_antilinear(tol):
            raise NotAntilinearError("S has a nonzero complex-linear part")
        return np.asarray(s.antilinear)
    return as_complex_matrix(s, "S")


def common_eigenvector(n_op, s, tol=DEFAULT_TOL, cluster_tol=DEFAULT_TOL):
    """Common unit eigenvector of ``N``, ``N*`` and ``S`` when ``N S = S N*``.

    ``N`` is a normal complex matrix, ``S`` a self-adjoint antilinear operator.
    The eigenspace ``W`` of ``N`` chosen is the one of largest dimension
    (ties: smallest ``|lambda|``, then smallest angle); ``S`` leaves ``W``
    invariant and its restriction is diagonalized by Takagi.

    Returns
    -------
    z : ndarray
    lam : complex
        ``N z = lam z`` and ``N* z = conj(lam) z``.
    r : float
        ``S z = r z`` with ``r >= 0``.
    """
    n_mat = as_complex_matrix(n_op, "N") if not isinstance(n_op, RealLinearOp) else np.asarray(n_op.linear)
    m_s = _as_antilinear_matrix(s, tol)
    if n_mat.shape != m_s.shape:
        raise DimensionError("N and S differ in dimension")
    _check_pair(n_mat, m_s, tol)
    return _common_eigenvector(n_mat, (m_s + m_s.T) / 2, tol, cluster_tol)


def _eigenspace(n_mat, cluster_tol):
    t, q = scipy.linalg.schur(n_mat, output="complex")
    lam = np.diagonal(t)
    gap = cluster_tol * max(1.0, np.linalg.norm(n_mat, 2))
    groups = cluster_values(lam, gap)

    def key(g):
        mu = np.mean(lam[g])
        return (-len(g), round(abs(mu), 12), np.angle(mu))

    best = min(groups, key=key)
    w, _ = np.linalg.qr(q[:, best])
    return w


def _common_eigenvector(n_mat, m_s, tol, cluster_tol):
    w = _eigenspace(n_mat, cluster_tol)
    image = m_s @ w.conj()
    leak = np.linalg.norm(image - w @ (w.conj().T @ image), 2)
    if leak > tol * max(1.0, np.linalg.norm(m_s, 2)):
        raise HypothesisViolation("eigenspace of N is not S-invariant", residual=float(leak))
    restricted = w.conj().T @ image
    f = takagi((restricted + restricted.T) / 2, tol=1e-6)
    z = w @ f.u[:, 0]
    z = z / np.linalg.norm(z)
    lam = complex(inner(n_mat @ z, z))
    return z, lam, float(f.d[0])


def diagonalize_commuting_pair(n_op, s, tol=DEFAULT_TOL, cluster_tol=DEFAULT_TOL):
    """Orthonormal eigenbasis of ``A = N + S`` by repeated deflation.

    At every step a common eigenvector ``e`` of ``N`` and ``S`` is split off
    and the pair is restricted to ``{e}^perp``, which reduces both.

    Returns
    -------
    basis : (n, n) ndarray
        Columns ``e_k``.
    pairs : list of (complex, float)
        ``(lambda_k, r_k)`` with ``A e_k = (lambda_k + r_k) e_k``.
    """
    n_mat = as_complex_matrix(n_op, "N") if not isinstance(n_op, RealLinearOp) else np.asarray(n_op.linear)
    m_s = _as_antilinear_matrix(s, tol)
    if n_mat.shape != m_s.shape:
        raise DimensionError("N and S differ in dimension")
    _check_pair(n_mat, m_s, tol)
    m_s = (m_s + m_s.T) / 2
    dim = n_mat.shape[0]
    frame = np.eye(dim, dtype=complex)  # orthonormal basis of the remaining subspace
    vectors, pairs = [], []
    while frame.shape[1]:
        n_r = frame.conj().T @ n_mat @ frame
        m_r = frame.conj().T @ m_s @ frame.conj()
        c, lam, r = _common_eigenvector(n_r, (m_r + m_r.T) / 2, tol, cluster_tol)
        e = frame @ c
        vectors.append(e)
        pairs.append((lam, r))
        frame = frame @ orthonormal_complement(c[:, None])
    return np.column_stack(vectors), pairs
