"""Command-line front end.

Every subcommand reads a JSON operator (``--input``), writes one JSON object
(``--output`` or stdout) and exits with

    0  success
    1  mathematical precondition failed (JSON ``{"error": code, "residual": x}``)
    2  usage error
    3  I/O error
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import jsonio
from .core import SAMPLE_KINDS, Conjugation, RealLinearOp, realify, sample
from .csym import approx_condiag, approx_factor
from .exceptions import AntilinError
from .polar_spectral import measure_of, polar, reconstruct, spectral_measure
from .schatten import SchattenParams
from .spectra import conjugation_eigenbasis
from .takagi import takagi
from .wvn import wvn_decompose

log = logging.getLogger("antilin")

SUBCOMMANDS = ("takagi", "polar", "spectrum", "wvn", "conj-basis", "csym-approx", "random", "check")
EXIT_OK, EXIT_MATH, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    input_path: str = None
    output_path: str = None
    epsilon: float = 0.05
    p: float = 2.0
    tol: float = 1e-8
    seed: int = 0
    n: int = None
    kind: str = "selfadjoint_antilinear"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _build_parser():
    env_tol = os.environ.get("ANTILIN_TOL")
    default_tol = float(env_tol) if env_tol else 1e-8
    parser = _Parser(prog="antilin", description="Antilinear self-adjoint operator toolkit.")
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--input", dest="input_path")
    parser.add_argument("--output", dest="output_path")
    parser.add_argument("--epsilon", type=float, default=0.05)
    parser.add_argument("--p", type=float, default=2.0)
    parser.add_argument("--tol", type=float, default=default_tol)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--n", type=int)
    parser.add_argument("--kind", choices=SAMPLE_KINDS, default="selfadjoint_antilinear")
    return parser


def parse_args(argv) -> CliConfig:
    parser = _build_parser()
    ns = parser.parse_args(argv)
    if ns.subcommand == "random":
        if ns.n is None or ns.n < 1:
            parser.error("random requires --n >= 1")
    elif not ns.input_path:
        parser.error(f"{ns.subcommand} requires --input")
    if not ns.epsilon > 0:
        parser.error("--epsilon must be positive")
    if not 1 < ns.p < float("inf"):
        parser.error("--p must satisfy 1 < p < inf")
    if not 0 < ns.tol <= 1e-2:
        parser.error("--tol must lie in (0, 1e-2]")
    return CliConfig(
        subcommand=ns.subcommand,
        input_path=ns.input_path,
        output_path=ns.output_path,
        epsilon=ns.epsilon,
        p=ns.p,
        tol=ns.tol,
        seed=ns.seed,
        n=ns.n,
        kind=ns.kind,
    )


def _read_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _self_adjoint_input(obj):
    return jsonio.decode_op(obj)


def _takagi(cfg, obj):
    op = jsonio.decode_op(obj)
    if not op.is_antilinear(cfg.tol):
        m = np.asarray(op.linear) if op.is_complex_linear() else None
        if m is None:
            raise AntilinError("takagi expects a matrix or a pure antilinear operator")
        op = RealLinearOp.pure_antilinear(m)
    f = takagi(op.antilinear, cfg.tol)
    return {"u": jsonio.encode_matrix(f.u), "d": [float(x) for x in f.d]}


def _polar(cfg, obj):
    pf = polar(_self_adjoint_input(obj), cfg.tol)
    return {"modulus": jsonio.encode_matrix(pf.modulus), "tau": jsonio.encode_matrix(pf.tau.matrix)}


def _spectrum(cfg, obj):
    sm = spectral_measure(_self_adjoint_input(obj), tol=cfg.tol)
    return {
        "atoms": [{"lambda": lam, "projection": jsonio.encode_matrix(e)} for lam, e in sm.atoms],
        "tau": jsonio.encode_matrix(sm.tau.matrix),
    }


def _wvn(cfg, obj):
    dec = wvn_decompose(_self_adjoint_input(obj), cfg.epsilon, SchattenParams(cfg.p), cfg.tol)
    return {
        "D": jsonio.encode_op(dec.d_op),
        "K": jsonio.encode_op(dec.k_op),
        "achieved_norm": dec.achieved_norm,
        "epsilon": dec.epsilon,
        "p": dec.p,
        "blocks": [
            {
                "projection": jsonio.encode_matrix(b.projection),
                "basis": jsonio.encode_matrix(b.basis),
                "values": [float(v) for v in b.values],
            }
            for b in dec.blocks
        ],
        "steps": [s.as_dict() for s in dec.steps],
    }


def _conj_basis(cfg, obj):
    kappa = jsonio.decode_conjugation(obj, tol=cfg.tol)
    return {"basis": jsonio.encode_matrix(conjugation_eigenbasis(kappa))}


def _csym_approx(cfg, obj):
    s = jsonio.decode_matrix(obj["matrix"], obj.get("dim"))
    tau = Conjugation(jsonio.decode_matrix(obj["tau"]), tol=cfg.tol) if "tau" in obj else None
    params = SchattenParams(cfg.p)
    c = approx_condiag(s, cfg.epsilon, params, tau=tau, tol=cfg.tol)
    f = approx_factor(s, cfg.epsilon, params, tau=tau, tol=cfg.tol)
    return {
        "condiag": {
            "u": jsonio.encode_matrix(c.u),
            "d": jsonio.encode_matrix(c.d),
            "values": [float(v) for v in c.values],
            "operator_error": c.operator_error,
            "schatten_error": c.schatten_error,
        },
        "factor": {
            "kappa": jsonio.encode_matrix(f.kappa.matrix),
            "d": jsonio.encode_matrix(f.d),
            "values": [float(v) for v in f.values],
            "basis": jsonio.encode_matrix(f.basis),
            "schatten_error": f.schatten_error,
        },
    }


def _random(cfg, obj):
    out = sample(cfg.kind, cfg.n, cfg.seed)
    if isinstance(out, Conjugation):
        return jsonio.encode_conjugation(out)
    return jsonio.encode_op(out)


def _norm(a):
    return float(np.linalg.norm(a, 2))


def invariant_checks(op: RealLinearOp, epsilon=0.05, p=2.0, tol=1e-8):
    """Run every applicable invariant on ``op``; list of ``(name, passed, residual)``."""
    checks = []

    def add(name, residual, bound, strict=False):
        ok = residual < bound if strict else residual <= bound
        checks.append((name, bool(ok), float(residual)))

    n = op.dim
    scale = max(1.0, _norm(realify(op)))
    add("adjoint_involution", _norm(op.H.H.linear - op.linear) + _norm(op.H.H.antilinear - op.antilinear), 0.0)
    sq = op @ op
    add("realify_homomorphism", _norm(realify(sq) - realify(op) @ realify(op)), 1e-12 * scale**2)

    m = np.asarray(op.antilinear)
    self_adjoint = op.is_antilinear(tol) and _norm(m - m.T) <= tol * max(1.0, _norm(m))
    add("self_adjoint_antilinear", _norm(op.linear) + _norm(m - m.T), tol * max(1.0, _norm(m)))
    if not self_adjoint:
        return checks
    a_norm = _norm(m)
    f = takagi(m, tol)
    add("takagi_reconstruction", _norm(m - f.reconstruct()), 1e-10 * max(1.0, a_norm))
    add("takagi_unitary", _norm(f.u @ f.u.conj().T - np.eye(n)), 1e-10)
    pf = polar(op, tol)
    t = pf.tau.matrix
    add("polar_factorization", max(_norm(m - pf.modulus @ t), _norm(m - t @ pf.modulus.conj())),
        1e-9 * (1 + a_norm))
    add("polar_tau_conjugation", max(_norm(t - t.T), _norm(t @ t.conj() - np.eye(n))), 1e-10)
    sm = spectral_measure(op, tol=tol)
    add("spectral_completeness", _norm(sum(e for _, e in sm.atoms) - np.eye(n)), 1e-9)
    add("spectral_commutation", max(_norm(e @ t - t @ e.conj()) for _, e in sm.atoms), 1e-9)
    add("spectral_full_set_is_tau", _norm(measure_of(sm, range(len(sm.atoms))).matrix - t), 1e-9)
    add("spectral_reconstruction", _norm(m - reconstruct(sm).antilinear), 1e-8 * a_norm)
    dec = wvn_decompose(op, epsilon, SchattenParams(p), tol)
    add("wvn_bound", dec.achieved_norm, epsilon, strict=True)
    add("wvn_split", _norm(m - dec.d_op.antilinear - dec.k_op.antilinear), 1e-9 * (1 + a_norm))
    basis = dec.basis
    add("wvn_basis_orthonormal", _norm(basis.conj().T @ basis - np.eye(n)), 1e-9)
    add("wvn_eigen_residual",
        float(np.max(np.linalg.norm(dec.d_op.antilinear @ basis.conj() - basis * dec.values, axis=0))), 1e-8)
    return checks


def _check(cfg, obj):
    results = []
    if "matrix" in obj and "antilinear" not in obj:
        try:
            kappa = jsonio.decode_conjugation(obj, tol=cfg.tol)
        except AntilinError as exc:
            results.append(("conjugation_invariants", False, float(exc.residual or np.inf)))
        else:
            results.append(("conjugation_invariants", True, 0.0))
            e = conjugation_eigenbasis(kappa)
            res = float(np.max(np.linalg.norm(kappa.matrix @ e.conj() - e, axis=0)))
            results.append(("conjugation_fixed_basis", res <= 1e-10, res))
    op = jsonio.decode_op(obj)
    results.extend(invariant_checks(op, cfg.epsilon, cfg.p, cfg.tol))
    report = {
        "checks": [{"name": n, "passed": ok, "residual": r} for n, ok, r in results],
        "passed": all(ok for _, ok, _ in results),
    }
    return report


_HANDLERS = {
    "takagi": _takagi,
    "polar": _polar,
    "spectrum": _spectrum,
    "wvn": _wvn,
    "conj-basis": _conj_basis,
    "csym-approx": _csym_approx,
    "random": _random,
    "check": _check,
}


def _emit(cfg, payload, stdout):
    text = jsonio.dumps(payload)
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def run(cfg: CliConfig, stdout=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    try:
        obj = _read_json(cfg.input_path) if cfg.input_path else None
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        log.error("cannot read %s: %s", cfg.input_path, exc)
        try:
            _emit(cfg, {"error": "io_error", "residual": None}, stdout)
        except OSError:
            pass
        return EXIT_IO

    code = EXIT_OK
    try:
        payload = _HANDLERS[cfg.subcommand](cfg, obj)
        if cfg.subcommand == "check" and not payload["passed"]:
            code = EXIT_MATH
    except AntilinError as exc:
        log.error("%s", exc)
        payload = {"error": exc.code, "residual": exc.residual}
        code = EXIT_MATH
    except (KeyError, TypeError) as exc:
        log.error("malformed input: %s", exc)
        payload = {"error": "invalid_input", "residual": None}
        code = EXIT_MATH

    try:
        _emit(cfg, payload, stdout)
    except OSError as exc:
        log.error("cannot write %s: %s", cfg.output_path, exc)
        return EXIT_IO
    return code


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        cfg = parse_args(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
