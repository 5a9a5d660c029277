import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from antilin.core import Conjugation, RealLinearOp, compose, operator_norm, standard_conjugation
from antilin.exceptions import NotAntilinearError
from antilin.schatten import SchattenParams, rank, schatten_norm, singular_values

from conftest import ginibre, random_conjugation_matrix, random_unitary


def test_params():
    assert SchattenParams(2).q == 2
    assert abs(SchattenParams(3).q - 1.5) < 1e-15
    for bad in (1, 0.5, np.inf, -2):
        with pytest.raises(ValueError):
            SchattenParams(bad)


def test_conjugation_values():
    assert np.array_equal(singular_values(standard_conjugation(4).op), np.ones(4))
    assert abs(schatten_norm(standard_conjugation(4).op, SchattenParams(2)) - 2) < 1e-14


def test_diagonal():
    s = singular_values(RealLinearOp.pure_antilinear(np.diag([3.0, -4.0])))
    assert np.allclose(s, [4, 3], atol=1e-14)


def test_random_against_svd(rng):
    for n in (1, 3, 9, 20):
        m = ginibre(rng, n)
        ref = np.linalg.svd(m, compute_uv=False)
        assert np.max(np.abs(singular_values(RealLinearOp.pure_antilinear(m)) - ref)) <= 1e-10


def test_small_singular_values_kept(rng):
    u, v = random_unitary(rng, 5), random_unitary(rng, 5)
    s = np.array([1.0, 1e-3, 1e-6, 1e-9, 0.0])
    m = u @ np.diag(s) @ v.conj().T
    assert np.max(np.abs(singular_values(m) - s)) <= 1e-10
    assert rank(m) == 4


@pytest.mark.parametrize("p", [1.2, 2.0, 7.0])
def test_rank_one(rng, p):
    v = ginibre(rng, 6, 1).ravel()
    v /= np.linalg.norm(v)
    a = RealLinearOp.pure_antilinear(np.outer(v, v))
    assert abs(schatten_norm(a, p) - 1) < 1e-12
    assert abs(schatten_norm(a, p) - operator_norm(a)) < 1e-12


def test_monotone_in_p(rng):
    a = RealLinearOp.pure_antilinear(ginibre(rng, 8))
    norms = [schatten_norm(a, p) for p in (1.1, 1.5, 2, 3, 10)]
    assert all(x >= y for x, y in zip(norms, norms[1:]))


def test_unitary_conjugation_invariance(rng):
    a = RealLinearOp.pure_antilinear(ginibre(rng, 6))
    base = schatten_norm(a, 2.5)
    k = Conjugation(random_conjugation_matrix(rng, 6)).op
    assert abs(schatten_norm(compose(k, compose(a, k)), 2.5) - base) < 1e-10
    u = RealLinearOp.complex_linear(random_unitary(rng, 6))
    v = RealLinearOp.complex_linear(random_unitary(rng, 6))
    assert abs(schatten_norm(compose(u, compose(a, v)), 2.5) - base) < 1e-10


def test_rejects_mixed():
    with pytest.raises(NotAntilinearError):
        schatten_norm(RealLinearOp(np.eye(2), np.eye(2)), 2)
    with pytest.raises(NotAntilinearError):
        singular_values(RealLinearOp.complex_linear(np.eye(2)))


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 10), st.integers(0, 2**32 - 1), st.floats(1.05, 8.0), st.booleans())
def test_rank_bound(n, seed, p, equal):
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, n + 1))
    s = np.ones(k) * 1.7 if equal else np.abs(rng.standard_normal(k)) + 0.01
    u, v = random_unitary(rng, n), random_unitary(rng, n)
    m = u[:, :k] @ np.diag(s) @ v[:, :k].conj().T
    a = RealLinearOp.pure_antilinear(m)
    lhs, rhs = schatten_norm(a, p), k ** (1 / p) * operator_norm(a)
    assert lhs <= rhs * (1 + 1e-12)
    if equal:
        assert abs(lhs - rhs) <= 1e-10 * max(1, rhs)
