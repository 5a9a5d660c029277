"""Weyl-von Neumann decomposition ``A = D + K`` of a self-adjoint antilinear operator.

``D`` is diagonalizable (an orthonormal eigenbasis with nonnegative
eigenvalues) and ``||K||_p < epsilon``.  The construction is the classical
one: repeatedly pick a ``tau``-fixed vector ``f``, bin the spectrum of
``|A|`` into ``m`` equal subintervals, and let ``P`` project onto the
normalized pieces ``E(M_k) f``.  Cutting the off-diagonal blocks
``P A P^perp`` and ``P^perp A P`` costs at most ``2 (b - a) / m^(1/q)`` in
Schatten p-norm and leaves an operator reduced by ``P``.  Each range of ``P``
is finite dimensional and is diagonalized by Takagi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import DEFAULT_TOL, RealLinearOp
from .exceptions import AntilinError, ConvergenceError, NotFixedError, PartitionCapError
from .polar_spectral import PolarForm, _self_adjoint_matrix, polar
from .schatten import SchattenParams, schatten_norm
from .takagi import check_symmetric, orthonormal_complement, takagi

__all__ = [
    "MAX_PARTITIONS",
    "ReduceStepResult",
    "StepRecord",
    "WvnBlock",
    "WvnDecomposition",
    "partition_count",
    "reduce_step",
    "wvn_decompose",
]

# Largest partition count accepted; bins are located in floating point, so
# anything beyond the float range is meaningless.
MAX_PARTITIONS = 10**300

# pieces E(M_k) f with norm at or below this fraction of ||f|| are dropped
_PIECE_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class ReduceStepResult:
    p_proj: np.ndarray
    k_op: RealLinearOp
    b_op: RealLinearOp
    achieved_norm: float
    partitions: int
    rank: int
    interval: tuple
    offdiag_norm: float
    range_basis: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class StepRecord:
    step: int
    start_index: int
    m: int
    rank: int
    k_norm: float
    budget: float
    offdiag_norm: float
    interval_length: float

    def as_dict(self):
        return {
            "step": self.step,
            "start_index": self.start_index,
            "m": self.m,
            "rank": self.rank,
            "k_norm": self.k_norm,
            "budget": self.budget,
            "offdiag_norm": self.offdiag_norm,
            "interval_length": self.interval_length,
            "tau": "restricted",
        }


@dataclass(frozen=True, eq=False)
class WvnBlock:
    projection: np.ndarray
    basis: np.ndarray
    values: np.ndarray


@dataclass(frozen=True, eq=False)
class WvnDecomposition:
    """``A = D + K``.

    ``step_k_ops[j]`` is the correction added at step ``j + 1`` (the ``K`` of
    :func:`reduce_step`, where ``A = B - K``), so ``K = -sum(step_k_ops)``.
    """

    d_op: RealLinearOp
    k_op: RealLinearOp
    blocks: list
    p: float
    epsilon: float
    achieved_norm: float
    steps: list
    step_k_ops: list = field(default_factory=list, repr=False)
    step_projections: list = field(default_factory=list, repr=False)

    @property
    def basis(self):
        return np.hstack([b.basis for b in self.blocks])

    @property
    def values(self):
        return np.concatenate([b.values for b in self.blocks])


def partition_count(length, bound, q, max_partitions=MAX_PARTITIONS) -> int:
    """Smallest ``m >= 1`` with ``2 * length / m**(1/q) < bound``."""
    if bound <= 0:
        raise ValueError("bound must be positive")
    if length <= 0:
        return 1
    log_x = q * (math.log(2.0 * length) - math.log(bound))
    if log_x > math.log(max_partitions):
        raise PartitionCapError(
            f"bound {bound:g} needs more than {max_partitions:.3g} subintervals",
            residual=float(bound),
        )
    if log_x < 0:
        return 1
    # m > (2L/bound)^q; the small inflation absorbs rounding in exp/log
    x = math.exp(log_x) * (1 + 1e-12)
    m = int(math.floor(x)) + 1
    if m > max_partitions:
        raise PartitionCapError(
            f"bound {bound:g} needs more than {max_partitions:.3g} subintervals",
            residual=float(bound),
        )
    return m


def reduce_step(a, f, bound, params=SchattenParams(), tol=DEFAULT_TOL,
                max_partitions=MAX_PARTITIONS, polar_form: PolarForm = None) -> ReduceStepResult:
    """One reduction: find ``P`` with ``f`` in its range and ``A + K`` reduced by ``P``.

    Parameters
    ----------
    a : RealLinearOp or (n, n) array_like
        Self-adjoint antilinear operator (symmetric matrix).
    f : (n,) array_like
        Nonzero vector fixed by the polar conjugation ``tau`` of ``a``.
    bound : float
        Required strict upper bound on ``||K||_p``.
    params : SchattenParams
    polar_form : PolarForm, optional
        Precomputed ``polar(a)``; ``f`` must be fixed by its ``tau``.

    Returns
    -------
    ReduceStepResult
        ``A = B - K`` with ``B = PAP + P'AP'`` and ``K = -(P'AP + PAP')``
        where ``P' = I - P``.
    """
    if not isinstance(params, SchattenParams):
        params = SchattenParams(params)
    m = check_symmetric(_self_adjoint_matrix(a, tol), tol)
    n = m.shape[0]
    f = np.asarray(f, dtype=complex)
    if f.shape != (n,):
        raise AntilinError(f"f must have length {n}")
    fnorm = float(np.linalg.norm(f))
    if fnorm == 0.0:
        raise AntilinError("f must be nonzero")
    if not bound > 0:
        raise ValueError("bound must be positive")
    pf = polar_form if polar_form is not None else polar(m, tol)
    t = pf.tau.matrix
    fix_res = float(np.linalg.norm(t @ f.conj() - f))
    if fix_res > max(tol, 1e-10) * fnorm:
        raise NotFixedError("f is not fixed by the polar conjugation", residual=fix_res)

    u, d = pf.basis, pf.values
    lo, hi = 0.0, float(d[0])
    parts = partition_count(hi - lo, bound, params.q, max_partitions)
    if hi > lo:
        width = (hi - lo) / parts
        bins = [min(int(math.floor((x - lo) / width)), parts - 1) for x in d]
    else:
        bins = [0] * n

    # coordinates of f in the tau-fixed eigenbasis are real
    coeff = (u.conj().T @ f).real
    pieces = []
    for k in sorted(set(bins)):
        idx = [i for i in range(n) if bins[i] == k]
        c = coeff[idx]
        cn = float(np.linalg.norm(c))
        if cn > _PIECE_RTOL * fnorm:
            pieces.append(u[:, idx] @ (c / cn))
    g = np.column_stack(pieces)
    p = g @ g.conj().T
    p = (p + p.conj().T) / 2
    pp = np.eye(n) - p

    off = pp @ m @ p.conj()
    k_mat = -(off + p @ m @ pp.conj())
    k_mat = (k_mat + k_mat.T) / 2
    b_mat = p @ m @ p.conj() + pp @ m @ pp.conj()
    b_mat = (b_mat + b_mat.T) / 2
    k_op = RealLinearOp.pure_antilinear(k_mat)
    achieved = schatten_norm(k_op, params)
    if not achieved < bound:
        raise ConvergenceError(
            f"reduction step missed its bound: {achieved:g} >= {bound:g}", residual=achieved
        )
    return ReduceStepResult(
        p_proj=p,
        k_op=k_op,
        b_op=RealLinearOp.pure_antilinear(b_mat),
        achieved_norm=achieved,
        partitions=parts,
        rank=g.shape[1],
        interval=(lo, hi),
        offdiag_norm=float(np.linalg.norm(off, 2)),
        range_basis=g,
    )


def _mixing_matrix(n):
    """Fixed real orthogonal matrix with (generically) no zero entries."""
    if n == 1:
        return np.ones((1, 1))
    v = np.ones(n) / np.sqrt(n)
    v[0] += 1.0
    v /= np.linalg.norm(v)
    return np.eye(n) - 2.0 * np.outer(v, v)


def _refix(y, t):
    """A tau-fixed vector built from ``y`` (``y + tau y``, or ``i y + tau(i y)``)."""
    f = y + t @ y.conj()
    if np.linalg.norm(f) <= 1e-8 * np.linalg.norm(y):
        f = 1j * y + t @ (1j * y).conj()
    return f / np.linalg.norm(f)


def wvn_decompose(a, epsilon, params=SchattenParams(), tol=DEFAULT_TOL,
                  start="mixed", max_partitions=MAX_PARTITIONS) -> WvnDecomposition:
    """Decompose ``A = D + K`` with ``D`` diagonalizable and ``||K||_p < epsilon``.

    Step ``j`` (``j = 1, 2, ...``) runs :func:`reduce_step` with budget
    ``epsilon / 2**j`` on the part of the current operator living on the
    not-yet-covered subspace.  Its vector ``f`` is the next vector of a
    ``tau``-fixed start basis projected onto that subspace and made fixed
    under the polar conjugation of the restricted operator.

    Parameters
    ----------
    a : RealLinearOp or array_like
        Self-adjoint antilinear operator.
    epsilon : float
        Strict bound on the Schatten p-norm of ``K``.
    params : SchattenParams or float
    start : {"mixed", "eigen"}
        ``tau``-fixed start basis.  ``"eigen"`` uses the Takagi basis of ``A``
        itself, which makes every step trivial (``K = 0``); ``"mixed"`` rotates
        it by a fixed real orthogonal matrix, which keeps it ``tau``-fixed.
    """
    if not isinstance(params, SchattenParams):
        params = SchattenParams(params)
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    if start not in ("mixed", "eigen"):
        raise ValueError(f"unknown start basis {start!r}")
    m = check_symmetric(_self_adjoint_matrix(a, tol), tol)
    m = (m + m.T) / 2
    n = m.shape[0]

    e = polar(m, tol).basis
    if start == "mixed":
        e = e @ _mixing_matrix(n)

    current = m.copy()
    k_total = np.zeros_like(m)
    frame = np.eye(n, dtype=complex)
    ranges, steps, k_parts, projections = [], [], [], []
    ptr = 0
    step = 0
    while frame.shape[1]:
        for _ in range(n):
            y = frame.conj().T @ e[:, ptr]
            if np.linalg.norm(y) > 1e-8:
                break
            ptr = (ptr + 1) % n
        else:  # pragma: no cover - the start basis spans C^n
            raise ConvergenceError("no start vector reaches the remaining subspace")
        step += 1
        budget = epsilon / 2.0**step
        m_v = frame.conj().T @ current @ frame.conj()
        m_v = (m_v + m_v.T) / 2
        pf = polar(m_v, tol)
        f = _refix(y, pf.tau.matrix)
        res = reduce_step(m_v, f, budget, params, tol, max_partitions, polar_form=pf)

        k_j = frame @ res.k_op.antilinear @ frame.T
        current = current + k_j
        k_total = k_total + k_j
        k_parts.append(RealLinearOp.pure_antilinear(k_j))
        projections.append(frame @ res.p_proj @ frame.conj().T)
        ranges.append(frame @ res.range_basis)
        steps.append(StepRecord(
            step=step,
            start_index=ptr,
            m=res.partitions,
            rank=res.rank,
            k_norm=res.achieved_norm,
            budget=budget,
            offdiag_norm=res.offdiag_norm,
            interval_length=res.interval[1] - res.interval[0],
        ))
        frame = frame @ orthonormal_complement(res.range_basis)
        ptr = (ptr + 1) % n

    k_total = (k_total + k_total.T) / 2
    d_mat = m + k_total
    d_mat = (d_mat + d_mat.T) / 2
    blocks = []
    for q in ranges:
        # q has orthonormal columns spanning a subspace that reduces D
        d_q = q.conj().T @ d_mat @ q.conj()
        tf = takagi((d_q + d_q.T) / 2, tol=1e-6)
        blocks.append(WvnBlock(projection=q @ q.conj().T, basis=q @ tf.u, values=tf.d))
    # each step adds its K_j to the operator, so D = A + sum K_j and A = D - sum K_j
    k_op = RealLinearOp.pure_antilinear(-k_total)
    return WvnDecomposition(
        d_op=RealLinearOp.pure_antilinear(d_mat),
        k_op=k_op,
        blocks=blocks,
        p=params.p,
        epsilon=float(epsilon),
        achieved_norm=schatten_norm(k_op, params),
        steps=steps,
        step_k_ops=k_parts,
        step_projections=projections,
    )
