import itertools

import numpy as np
import pytest

from antilin.core import Conjugation, RealLinearOp, operator_norm, standard_conjugation
from antilin.exceptions import NotAntilinearError, NotPSDError, NotSymmetricError
from antilin.polar_spectral import SpectralMeasure, measure_of, polar, reconstruct, spectral_measure, sqrt_psd

from conftest import ginibre, norm2, random_conjugation_matrix, random_symmetric, random_unitary


def conjugation_ok(t, tol=1e-10):
    n = t.shape[0]
    return (norm2(t - t.T) <= tol and norm2(t @ t.conj().T - np.eye(n)) <= tol
            and norm2(t @ t.conj() - np.eye(n)) <= tol)


class TestSqrtPsd:
    def test_identity(self):
        assert norm2(sqrt_psd(np.eye(3)) - np.eye(3)) < 1e-15

    def test_diagonal(self):
        assert norm2(sqrt_psd(np.diag([4.0, 9.0])) - np.diag([2.0, 3.0])) < 1e-14

    def test_gram(self, rng):
        g = ginibre(rng, 7)
        h = g.conj().T @ g
        r = sqrt_psd(h)
        assert norm2(r @ r - h) <= 1e-10 * max(1, norm2(h))
        assert norm2(r - r.conj().T) == 0
        assert np.linalg.eigvalsh(r)[0] >= -1e-12

    def test_dust_clamped(self):
        r = sqrt_psd(np.diag([1.0, -1e-14]))
        assert np.all(np.isfinite(r)) and abs(r[1, 1]) < 1e-12

    def test_rejects_negative(self):
        with pytest.raises(NotPSDError):
            sqrt_psd(np.diag([1.0, -0.5]))


class TestPolar:
    def test_standard_conjugation(self):
        pf = polar(standard_conjugation(3).op)
        assert norm2(pf.modulus - np.eye(3)) < 1e-14
        assert norm2(pf.tau.matrix - np.eye(3)) < 1e-14

    def test_scalar_negative(self):
        pf = polar(RealLinearOp.pure_antilinear(np.array([[-9.0]])))
        assert abs(pf.modulus[0, 0] - 9) < 1e-14
        assert abs(pf.tau.matrix[0, 0] + 1) < 1e-14

    @pytest.mark.parametrize("n", [1, 5, 12])
    def test_random(self, rng, n):
        m = random_symmetric(rng, n)
        a = RealLinearOp.pure_antilinear(m)
        pf = polar(a)
        h, t = pf.modulus, pf.tau.matrix
        assert norm2(m - h @ t) <= 1e-9
        assert norm2(m - t @ h.conj()) <= 1e-9
        assert conjugation_ok(t)
        assert np.linalg.eigvalsh(h)[0] >= -1e-10 * norm2(h)
        # modulus is the unique positive root of A*A, whose matrix is M conj(M)
        assert norm2(h - sqrt_psd(m @ m.conj())) <= 1e-9 * max(1, norm2(m))
        # tau fixes the Takagi basis
        assert norm2(t @ pf.basis.conj() - pf.basis) <= 1e-10

    def test_rank_deficient(self, rng):
        u = random_unitary(rng, 6)
        m = u @ np.diag([2.0, 1.0, 0, 0, 0, 0]) @ u.T
        pf = polar(RealLinearOp.pure_antilinear(m))
        assert np.sum(np.linalg.eigvalsh(pf.modulus) > 1e-10) == 2
        assert conjugation_ok(pf.tau.matrix)
        assert norm2(m - pf.modulus @ pf.tau.matrix) <= 1e-9

    def test_rejects_non_self_adjoint(self):
        with pytest.raises(NotSymmetricError):
            polar(RealLinearOp.pure_antilinear(np.array([[0, 1], [0, 0]])))

    def test_rejects_linear(self):
        with pytest.raises(NotAntilinearError):
            polar(RealLinearOp.complex_linear(np.eye(2)))


class TestSpectralMeasure:
    def test_standard_conjugation(self):
        sm = spectral_measure(standard_conjugation(3).op)
        assert len(sm.atoms) == 1
        lam, e = sm.atoms[0]
        assert abs(lam - 1) < 1e-14 and norm2(e - np.eye(3)) < 1e-14

    def test_diagonal(self):
        sm = spectral_measure(RealLinearOp.pure_antilinear(np.diag([1.0, 2.0])))
        assert [round(l, 12) for l in sm.values] == [2.0, 1.0]
        assert norm2(sm.atoms[0][1] - np.diag([0, 1])) < 1e-14
        assert norm2(sm.atoms[1][1] - np.diag([1, 0])) < 1e-14

    def test_glued_values_share_atom(self, rng):
        u = random_unitary(rng, 5)
        m = u @ np.diag([3.0, 1.5, 1.5 + 1e-12, 0.7, 0.1]) @ u.T
        sm = spectral_measure(RealLinearOp.pure_antilinear((m + m.T) / 2))
        assert len(sm.atoms) == 4
        ranks = [int(round(np.trace(e).real)) for _, e in sm.atoms]
        assert ranks == [1, 2, 1, 1]

    def test_invariants(self, rng):
        m = random_symmetric(rng, 9)
        sm = spectral_measure(RealLinearOp.pure_antilinear(m))
        t = sm.tau.matrix
        es = [e for _, e in sm.atoms]
        assert norm2(sum(es) - np.eye(9)) <= 1e-9
        for i, j in itertools.combinations(range(len(es)), 2):
            assert norm2(es[i] @ es[j]) <= 1e-9
        for e in es:
            assert norm2(e @ e - e) <= 1e-9 and norm2(e - e.conj().T) <= 1e-9
            assert norm2(e @ t - t @ e.conj()) <= 1e-9
        assert np.all(np.diff(sm.values) < 0)

    def test_commutation_for_any_commuting_pair(self, rng):
        # tau' = V V^T and H' = V diag(h) V^H commute; spectral projections of H' commute with tau'
        v = random_unitary(rng, 6)
        t = v @ v.T
        h = v @ np.diag([3.0, 3.0, 1.0, 1.0, 1.0, 0.5]) @ v.conj().T
        assert norm2(h @ t - t @ h.conj()) < 1e-12
        w, q = np.linalg.eigh(h)
        for lam in (0.5, 1.0, 3.0):
            qc = q[:, np.abs(w - lam) < 1e-8]
            e = qc @ qc.conj().T
            assert norm2(e @ t - t @ e.conj()) <= 1e-9


class TestMeasureOf:
    def setup_method(self):
        rng = np.random.default_rng(7)
        self.m = random_symmetric(rng, 8)
        self.sm = spectral_measure(RealLinearOp.pure_antilinear(self.m))

    def test_full_set_is_tau(self):
        f = measure_of(self.sm, range(len(self.sm.atoms)))
        assert norm2(f.matrix - self.sm.tau.matrix) <= 1e-10

    def test_empty_is_zero(self):
        assert norm2(measure_of(self.sm, []).matrix) == 0

    def test_properties(self, rng):
        k = len(self.sm.atoms)
        for _ in range(20):
            mask = rng.random(k) < 0.5
            s1 = set(np.flatnonzero(mask))
            s2 = set(np.flatnonzero(~mask & (rng.random(k) < 0.7)))
            f1, f2 = measure_of(self.sm, s1), measure_of(self.sm, s2)
            f12 = measure_of(self.sm, s1 | s2)
            assert norm2(f12.matrix - f1.matrix - f2.matrix) <= 1e-10
            # F(S)^2 = E(S) and F(S) self-adjoint antilinear
            assert norm2(f1.matrix @ f1.matrix.conj() - f1.range_projection) <= 1e-9
            assert norm2(f1.matrix - f1.matrix.T) <= 1e-9

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            measure_of(self.sm, [len(self.sm.atoms)])
        with pytest.raises(IndexError):
            measure_of(self.sm, [-1])


class TestReconstruct:
    def test_standard(self):
        a = reconstruct(spectral_measure(standard_conjugation(2).op))
        assert norm2(a.antilinear - np.eye(2)) < 1e-14

    def test_single_atom(self, rng):
        tau = Conjugation(random_conjugation_matrix(rng, 4))
        a = reconstruct(SpectralMeasure(atoms=[(2.5, np.eye(4))], tau=tau))
        assert norm2(a.antilinear - 2.5 * tau.matrix) < 1e-14

    def test_round_trip(self, rng):
        m = random_symmetric(rng, 10)
        a = RealLinearOp.pure_antilinear(m)
        back = reconstruct(spectral_measure(a, cluster_tol=1e-10))
        assert norm2(back.antilinear - m) <= 1e-8 * operator_norm(a)
        assert norm2(back.linear) == 0
