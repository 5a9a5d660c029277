"""Real-linear, complex-linear and antilinear operators on C^n.

A real-linear operator is stored as a pair of complex matrices ``(C, M)``
acting as ``x -> C @ x + M @ conj(x)``.  ``C`` is the complex-linear part and
``M`` represents the antilinear part.

The inner product is linear in the *first* argument,
``inner(x, y) = sum(x * conj(y))``.  With that convention the adjoint of the
antilinear map ``x -> M conj(x)`` is ``x -> M.T conj(x)``, so self-adjoint
antilinear operators are exactly the complex symmetric matrices ``M``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import (
    AntilinError,
    DimensionError,
    NotConjugationError,
    NotOrthonormalError,
)

__all__ = [
    "DEFAULT_TOL",
    "ToleranceConfig",
    "RealLinearOp",
    "Conjugation",
    "AntilinearProjection",
    "as_complex_matrix",
    "inner",
    "identity",
    "zero",
    "standard_conjugation",
    "from_action",
    "from_callable",
    "apply",
    "compose",
    "adjoint",
    "realify",
    "operator_norm",
    "antilinear_projection",
    "sample",
    "SAMPLE_KINDS",
]

DEFAULT_TOL = 1e-8


@dataclass(frozen=True)
class ToleranceConfig:
    """Relative tolerances used for validation and eigenvalue clustering."""

    validation_tol: float = DEFAULT_TOL
    cluster_tol: float = DEFAULT_TOL

    def __post_init__(self):
        for name in ("validation_tol", "cluster_tol"):
            value = getattr(self, name)
            if not (0.0 < value <= 1e-2):
                raise ValueError(f"{name} must lie in (0, 1e-2], got {value!r}")


def _frozen(a):
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


def as_complex_matrix(a, name="matrix"):
    """Return ``a`` as a finite square complex ndarray or raise."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimensionError(f"{name} must be a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise AntilinError(f"{name} has non-finite entries")
    return a


def _as_vector(x, n):
    x = np.asarray(x, dtype=complex)
    if x.shape != (n,):
        raise DimensionError(f"expected a vector of length {n}, got shape {x.shape}")
    return x


def inner(x, y):
    """Inner product, linear in ``x`` and conjugate-linear in ``y``."""
    return np.vdot(y, x)


def _norm2(a):
    return float(np.linalg.norm(a, 2)) if a.size else 0.0


@dataclass(frozen=True, eq=False)
class RealLinearOp:
    """The real-linear map ``x -> linear @ x + antilinear @ conj(x)``."""

    linear: np.ndarray
    antilinear: np.ndarray

    def __post_init__(self):
        c = as_complex_matrix(self.linear, "linear part")
        m = as_complex_matrix(self.antilinear, "antilinear part")
        if c.shape != m.shape:
            raise DimensionError(f"linear part {c.shape} and antilinear part {m.shape} differ")
        object.__setattr__(self, "linear", _frozen(c))
        object.__setattr__(self, "antilinear", _frozen(m))

    @classmethod
    def complex_linear(cls, c):
        c = as_complex_matrix(c)
        return cls(c, np.zeros_like(c))

    @classmethod
    def pure_antilinear(cls, m):
        m = as_complex_matrix(m)
        return cls(np.zeros_like(m), m)

    @property
    def dim(self) -> int:
        return self.linear.shape[0]

    def is_antilinear(self, tol=0.0) -> bool:
        return np.linalg.norm(self.linear) <= tol * max(1.0, np.linalg.norm(self.antilinear))

    def is_complex_linear(self, tol=0.0) -> bool:
        return np.linalg.norm(self.antilinear) <= tol * max(1.0, np.linalg.norm(self.linear))

    def __call__(self, x):
        return apply(self, x)

    def __matmul__(self, other):
        if isinstance(other, RealLinearOp):
            return compose(self, other)
        return NotImplemented

    def __add__(self, other):
        if not isinstance(other, RealLinearOp):
            return NotImplemented
        _check_same_dim(self, other)
        return RealLinearOp(self.linear + other.linear, self.antilinear + other.antilinear)

    def __sub__(self, other):
        if not isinstance(other, RealLinearOp):
            return NotImplemented
        _check_same_dim(self, other)
        return RealLinearOp(self.linear - other.linear, self.antilinear - other.antilinear)

    def __neg__(self):
        return RealLinearOp(-self.linear, -self.antilinear)

    def __mul__(self, scalar):
        # scalar * op means (scalar * I) o op, i.e. multiply the output
        if not np.isscalar(scalar):
            return NotImplemented
        return RealLinearOp(scalar * self.linear, scalar * self.antilinear)

    __rmul__ = __mul__

    def shift(self, lam):
        """Return ``self - lam * I``."""
        return RealLinearOp(self.linear - lam * np.eye(self.dim), self.antilinear)

    @property
    def H(self):
        return adjoint(self)


def _check_same_dim(a, b):
    if a.dim != b.dim:
        raise DimensionError(f"dimension mismatch: {a.dim} vs {b.dim}")


def identity(n):
    return RealLinearOp(np.eye(n), np.zeros((n, n)))


def zero(n):
    return RealLinearOp(np.zeros((n, n)), np.zeros((n, n)))


def _check_conjugation(t, tol):
    scale = max(1.0, _norm2(t))
    n = t.shape[0]
    eye = np.eye(n)
    sym = np.linalg.norm(t - t.T, 2)
    if sym > tol * scale:
        raise NotConjugationError("conjugation matrix is not symmetric", residual=float(sym))
    uni = np.linalg.norm(t @ t.conj().T - eye, 2)
    if uni > tol:
        raise NotConjugationError("conjugation matrix is not unitary", residual=float(uni))
    inv = np.linalg.norm(t @ t.conj() - eye, 2)
    if inv > tol:
        raise NotConjugationError("conjugation is not an involution", residual=float(inv))


@dataclass(frozen=True, eq=False)
class Conjugation:
    """Unitary conjugation ``x -> matrix @ conj(x)``.

    ``matrix`` must be symmetric and unitary; both are checked on
    construction against ``tol``.
    """

    matrix: np.ndarray
    tol: float = field(default=DEFAULT_TOL, repr=False)

    def __post_init__(self):
        t = as_complex_matrix(self.matrix, "conjugation matrix")
        _check_conjugation(t, self.tol)
        object.__setattr__(self, "matrix", _frozen(t))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def op(self) -> RealLinearOp:
        return RealLinearOp.pure_antilinear(self.matrix)

    def __call__(self, x):
        return self.matrix @ np.conj(_as_vector(x, self.dim))


def standard_conjugation(n) -> Conjugation:
    return Conjugation(np.eye(n))


@dataclass(frozen=True, eq=False)
class AntilinearProjection:
    """Antilinear orthogonal projection ``F x = matrix @ conj(x)``.

    ``range_projection`` is the Hermitian projection ``P`` onto the subspace on
    which ``F`` acts as a unitary conjugation; ``F`` vanishes on the
    orthocomplement and ``F o F = P``.
    """

    matrix: np.ndarray
    range_projection: np.ndarray
    tol: float = field(default=DEFAULT_TOL, repr=False)

    def __post_init__(self):
        mf = as_complex_matrix(self.matrix, "projection matrix")
        p = as_complex_matrix(self.range_projection, "range projection")
        if mf.shape != p.shape:
            raise DimensionError("projection matrix and range projection differ in shape")
        tol = self.tol
        checks = {
            "range projection is not Hermitian": np.linalg.norm(p - p.conj().T, 2),
            "range projection is not idempotent": np.linalg.norm(p @ p - p, 2),
            "F o F differs from the range projection": np.linalg.norm(mf @ mf.conj() - p, 2),
            "projection matrix is not symmetric": np.linalg.norm(mf - mf.T, 2),
            "F does not vanish on the orthocomplement": np.linalg.norm(
                mf @ (np.eye(p.shape[0]) - p).conj(), 2
            ),
        }
        for message, residual in checks.items():
            if residual > tol:
                raise AntilinError(message, residual=float(residual))
        object.__setattr__(self, "matrix", _frozen(mf))
        object.__setattr__(self, "range_projection", _frozen(p))

    @property
    def op(self) -> RealLinearOp:
        return RealLinearOp.pure_antilinear(self.matrix)

    def __call__(self, x):
        return self.matrix @ np.conj(_as_vector(x, self.matrix.shape[0]))


def from_action(real_images, imag_images) -> RealLinearOp:
    """Recover ``(C, M)`` from the images of the 2n real probe vectors.

    Parameters
    ----------
    real_images : sequence of n vectors
        ``real_images[j]`` is ``A(e_j)``.
    imag_images : sequence of n vectors
        ``imag_images[j]`` is ``A(1j * e_j)``.

    Column ``j`` of the complex-linear part is ``(A e_j - i A(i e_j)) / 2`` and
    column ``j`` of the antilinear part is ``(A e_j + i A(i e_j)) / 2``.
    """
    if real_images is None or imag_images is None:
        raise AntilinError("missing probe images")
    real_images = list(real_images)
    imag_images = list(imag_images)
    n = len(real_images)
    if n == 0:
        raise DimensionError("no probe images supplied")
    if len(imag_images) != n:
        raise DimensionError(
            f"got {n} images of e_j but {len(imag_images)} images of i*e_j"
        )
    if any(v is None for v in real_images) or any(v is None for v in imag_images):
        raise AntilinError("missing probe image")
    re = np.column_stack([_as_vector(v, n) for v in real_images])
    im = np.column_stack([_as_vector(v, n) for v in imag_images])
    return RealLinearOp((re - 1j * im) / 2, (re + 1j * im) / 2)


def from_callable(func, n) -> RealLinearOp:
    """Probe a black-box real-linear ``func`` on ``e_j`` and ``i e_j``."""
    eye = np.eye(n, dtype=complex)
    return from_action([func(eye[:, j]) for j in range(n)], [func(1j * eye[:, j]) for j in range(n)])


def apply(op: RealLinearOp, x):
    x = _as_vector(x, op.dim)
    return op.linear @ x + op.antilinear @ np.conj(x)


def compose(a: RealLinearOp, b: RealLinearOp) -> RealLinearOp:
    """Return ``a o b``."""
    _check_same_dim(a, b)
    return RealLinearOp(
        a.linear @ b.linear + a.antilinear @ np.conj(b.antilinear),
        a.linear @ b.antilinear + a.antilinear @ np.conj(b.linear),
    )


def adjoint(op: RealLinearOp) -> RealLinearOp:
    # Re<Ax, y> = Re<x, A* y>; antilinear part transposes without conjugation
    return RealLinearOp(op.linear.conj().T, op.antilinear.T)


def realify(op: RealLinearOp) -> np.ndarray:
    """Real 2n x 2n matrix acting on the stacked vector ``[Re x; Im x]``."""
    c, m = op.linear, op.antilinear
    return np.block(
        [
            [c.real + m.real, -c.imag + m.imag],
            [c.imag + m.imag, c.real - m.real],
        ]
    )


def operator_norm(op: RealLinearOp) -> float:
    if op.is_complex_linear():
        return _norm2(op.linear)
    if op.is_antilinear():
        return _norm2(op.antilinear)
    return _norm2(realify(op))


def antilinear_projection(frame, tol=DEFAULT_TOL) -> AntilinearProjection:
    """Antilinear projection fixing every vector of an orthonormal frame.

    ``frame`` is either an n x k array whose columns are the frame vectors or
    a sequence of k vectors.  The result is ``F x = sum_k f_k f_k^T conj(x)``,
    so that ``F f_k = f_k`` and ``F`` vanishes on the orthocomplement.
    """
    if isinstance(frame, np.ndarray) and frame.ndim == 2:
        f = frame.astype(complex)
    else:
        vectors = [np.asarray(v, dtype=complex) for v in frame]
        if not vectors:
            raise DimensionError("empty frame")
        f = np.column_stack(vectors)
    n, k = f.shape
    gram = f.conj().T @ f
    res = np.linalg.norm(gram - np.eye(k), 2) if k else 0.0
    if res > tol:
        raise NotOrthonormalError("frame is not orthonormal", residual=float(res))
    return AntilinearProjection(f @ f.T, f @ f.conj().T, tol=max(tol, 1e-10))


SAMPLE_KINDS = ("ginibre", "symmetric", "unitary", "conjugation", "selfadjoint_antilinear")


def _ginibre(rng, n):
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)


def _haar_unitary(rng, n):
    q, r = np.linalg.qr(_ginibre(rng, n))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def sample(kind, n, seed=0):
    """Draw a seeded random operator.

    Randomness comes from ``numpy.random.default_rng(seed)`` (PCG64), so a
    given ``(kind, n, seed)`` always yields the same output.

    ginibre
        complex-linear, i.i.d. standard complex Gaussian entries with
        ``E|z|^2 = 1``.
    symmetric
        complex-linear, ``(G + G.T) / 2`` for a Ginibre ``G``.
    unitary
        complex-linear Haar unitary: QR of a Ginibre matrix with the phases
        of ``diag(R)`` moved into ``Q``.
    conjugation
        :class:`Conjugation` with matrix ``U @ U.T`` for a Haar ``U``.
    selfadjoint_antilinear
        ``(0, S)`` for a ``symmetric`` sample ``S``.
    """
    if int(n) < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    n = int(n)
    rng = np.random.default_rng(seed)
    if kind == "ginibre":
        return RealLinearOp.complex_linear(_ginibre(rng, n))
    if kind == "symmetric":
        g = _ginibre(rng, n)
        return RealLinearOp.complex_linear((g + g.T) / 2)
    if kind == "unitary":
        return RealLinearOp.complex_linear(_haar_unitary(rng, n))
    if kind == "conjugation":
        u = _haar_unitary(rng, n)
        t = u @ u.T
        return Conjugation((t + t.T) / 2)
    if kind == "selfadjoint_antilinear":
        g = _ginibre(rng, n)
        return RealLinearOp.pure_antilinear((g + g.T) / 2)
    raise ValueError(f"unknown sample kind {kind!r}; expected one of {SAMPLE_KINDS}")
