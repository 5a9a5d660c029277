"""Polar form ``A = |A| tau = tau |A|`` and the antilinear spectral measure.

For a self-adjoint antilinear ``A`` with matrix ``M`` (``M`` symmetric) and
Takagi factorization ``M = U diag(d) U^T``:

* ``|A| = U diag(d) U^H``  (the positive square root of ``A* A``),
* ``tau`` has matrix ``U U^T``,
* the spectral measure of ``|A|`` is atomic; its value on a set of atoms is
  the Hermitian projection ``E``, and ``F = E tau`` has matrix ``E T``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOL,
    AntilinearProjection,
    Conjugation,
    RealLinearOp,
    as_complex_matrix,
)
from .exceptions import AntilinError, NotAntilinearError, NotPSDError
from .takagi import takagi

__all__ = [
    "PolarForm",
    "SpectralMeasure",
    "sqrt_psd",
    "polar",
    "spectral_measure",
    "measure_of",
    "reconstruct",
]


@dataclass(frozen=True, eq=False)
class PolarForm:
    modulus: np.ndarray
    tau: Conjugation
    # Takagi data the form was built from; columns of ``basis`` are fixed by tau
    basis: np.ndarray = None
    values: np.ndarray = None


@dataclass(frozen=True, eq=False)
class SpectralMeasure:
    """Atomic antilinear spectral measure.

    ``atoms`` is a list of ``(lam, E)`` with ``lam`` strictly descending and
    ``E`` mutually orthogonal Hermitian projections summing to the identity.
    Borel sets are index sets into ``atoms``.
    """

    atoms: list
    tau: Conjugation

    @property
    def values(self):
        return np.array([lam for lam, _ in self.atoms])

    @property
    def dim(self):
        return self.tau.dim


def _self_adjoint_matrix(a, tol):
    if isinstance(a, RealLinearOp):
        if not a.is_antilinear(tol):
            raise NotAntilinearError("operator has a nonzero complex-linear part",
                                     residual=float(np.linalg.norm(a.linear, 2)))
        return np.asarray(a.antilinear)
    if isinstance(a, Conjugation):
        return np.asarray(a.matrix)
    return as_complex_matrix(a)


def sqrt_psd(h, tol=DEFAULT_TOL):
    """Positive square root of a Hermitian positive semidefinite matrix.

    Eigenvalues down to ``-tol * ||H||`` are clamped to zero; anything more
    negative is rejected.
    """
    h = as_complex_matrix(h)
    scale = float(np.linalg.norm(h, 2))
    herm = float(np.linalg.norm(h - h.conj().T, 2))
    if herm > tol * max(1.0, scale):
        raise AntilinError("matrix is not Hermitian", residual=herm)
    w, v = np.linalg.eigh((h + h.conj().T) / 2)
    if w.size and w[0] < -tol * scale:
        raise NotPSDError("matrix has a negative eigenvalue", residual=float(w[0]))
    root = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    return (root + root.conj().T) / 2


def polar(a, tol=DEFAULT_TOL) -> PolarForm:
    """Polar form of a self-adjoint antilinear operator.

    On the kernel of ``A``, ``tau`` is the conjugation with respect to the
    kernel columns of the Takagi ``U``; any other choice there is equally
    valid.
    """
    m = _self_adjoint_matrix(a, tol)
    f = takagi(m, tol)
    u, d = f.u, f.d
    h = (u * d) @ u.conj().T
    h = (h + h.conj().T) / 2
    t = u @ u.T
    tau = Conjugation((t + t.T) / 2, tol=max(tol, 1e-10))
    return PolarForm(modulus=h, tau=tau, basis=u, values=d)


def _clusters_descending(d, gap):
    """Split descending ``d`` wherever consecutive values differ by more than ``gap``."""
    groups = [[0]]
    for i in range(1, len(d)):
        if d[i - 1] - d[i] > gap:
            groups.append([i])
        else:
            groups[-1].append(i)
    return groups


def spectral_measure(a, cluster_tol=DEFAULT_TOL, tol=DEFAULT_TOL) -> SpectralMeasure:
    """Spectral measure ``F(M) = E(M) tau`` of a self-adjoint antilinear operator.

    Atoms are single-linkage clusters of the eigenvalues of ``|A|``: two
    neighbours share an atom when they differ by at most
    ``cluster_tol * ||A||``.  An atom's value is the midpoint of its cluster.
    """
    pf = polar(a, tol)
    u, d = pf.basis, pf.values
    gap = cluster_tol * (d[0] if d.size else 0.0)
    atoms = []
    for g in _clusters_descending(d, gap):
        lam = 0.5 * (d[g[0]] + d[g[-1]])
        uc = u[:, g]
        e = uc @ uc.conj().T
        atoms.append((float(lam), (e + e.conj().T) / 2))
    return SpectralMeasure(atoms=atoms, tau=pf.tau)


def _indices(measure, index_set):
    idx = sorted(set(int(i) for i in index_set))
    for i in idx:
        if not 0 <= i < len(measure.atoms):
            raise IndexError(f"atom index {i} out of range (0..{len(measure.atoms) - 1})")
    return idx


def measure_of(measure: SpectralMeasure, index_set) -> AntilinearProjection:
    """``F(S) = E(S) tau`` for a set ``S`` of atom indices."""
    n = measure.dim
    e = np.zeros((n, n), dtype=complex)
    for i in _indices(measure, index_set):
        e = e + measure.atoms[i][1]
    return AntilinearProjection(e @ measure.tau.matrix, e, tol=1e-8)


def reconstruct(measure: SpectralMeasure) -> RealLinearOp:
    """``sum_i lam_i E_i tau``, the spectral integral of the identity function."""
    n = measure.dim
    h = np.zeros((n, n), dtype=complex)
    for lam, e in measure.atoms:
        h = h + lam * e
    return RealLinearOp.pure_antilinear(h @ measure.tau.matrix)
