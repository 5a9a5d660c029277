import numpy as np
import pytest


def ginibre(rng, n, m=None):
    m = n if m is None else m
    return (rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))) / np.sqrt(2)


def random_unitary(rng, n):
    # independent of antilin.core.sample: QR with an explicit phase correction
    q, r = np.linalg.qr(ginibre(rng, n))
    return q @ np.diag(np.diagonal(r) / np.abs(np.diagonal(r)))


def random_symmetric(rng, n):
    g = ginibre(rng, n)
    return (g + g.T) / 2


def random_conjugation_matrix(rng, n):
    u = random_unitary(rng, n)
    t = u @ u.T
    return (t + t.T) / 2


def norm2(a):
    return float(np.linalg.norm(a, 2))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def schatten_oracle(m, p):
    s = np.linalg.svd(m, compute_uv=False)
    return float(np.sum(s**p) ** (1 / p))


def wvn_residuals(m, dec):
    """Every invariant of a decomposition, measured independently of the library."""
    n = m.shape[0]
    d_mat, k_mat = dec.d_op.antilinear, dec.k_op.antilinear
    basis, values = dec.basis, dec.values
    projs = [b.projection for b in dec.blocks]
    cross = max((norm2(projs[i] @ projs[j]) for i in range(len(projs)) for j in range(i + 1, len(projs))),
                default=0.0)
    eig = max(np.linalg.norm(d_mat @ basis[:, j].conj() - values[j] * basis[:, j]) for j in range(n))
    step_ok = all(
        k.k_norm < k.budget and abs(k.budget - dec.epsilon / 2**k.step) <= 1e-15 * dec.epsilon
        for k in dec.steps
    )
    step_norms = [schatten_oracle(kj.antilinear, dec.p) for kj in dec.step_k_ops]
    return {
        "k_norm": schatten_oracle(k_mat, dec.p),
        "split": norm2(m - d_mat - k_mat) / (1 + norm2(m)),
        "sum_p": norm2(sum(projs) - np.eye(n)),
        "cross_p": cross,
        "basis": norm2(basis.conj().T @ basis - np.eye(n)),
        "eig": float(eig),
        "min_value": float(np.min(values)),
        "sym": max(norm2(d_mat - d_mat.T), norm2(k_mat - k_mat.T)),
        "steps_ok": step_ok,
        "step_norms_ok": all(x < dec.epsilon / 2 ** (j + 1) for j, x in enumerate(step_norms)),
        "ledger": ledger_excess(m, dec),
    }


def ledger_excess(m, dec):
    """Largest ``||P'AP|| - (b - a)/m`` over the steps, recomputed from the step data.

    Before step j the operator is ``A + sum_{i<j} K_i``, reduced by the earlier
    projections; the step works on the remainder ``R = I - sum_{i<j} P_i``.
    """
    n = m.shape[0]
    current = m.copy()
    remainder = np.eye(n, dtype=complex)
    worst = -np.inf
    for rec, k_j, p_j in zip(dec.steps, dec.step_k_ops, dec.step_projections):
        length = norm2(remainder @ current @ remainder.conj())
        off = norm2((remainder - p_j) @ current @ p_j.conj())
        worst = max(worst, off - length / rec.m - 1e-12 * (1 + norm2(m)))
        current = current + k_j.antilinear
        remainder = remainder - p_j
    return worst


def wvn_ok(r, epsilon):
    return (r["k_norm"] < epsilon and r["split"] <= 1e-9 and r["sum_p"] <= 1e-9 and r["cross_p"] <= 1e-9
            and r["basis"] <= 1e-8 and r["eig"] <= 1e-8 and r["min_value"] >= 0 and r["sym"] <= 1e-10
            and r["steps_ok"] and r["step_norms_ok"] and r["ledger"] <= 0)


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
