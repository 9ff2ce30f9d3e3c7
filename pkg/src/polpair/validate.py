"""Self-validation suite behind `polpair validate`.

Four independent cross-checks, each pitting one construction against a
second route to the same numbers:

softcore     hard-core projected spectrum vs the chi = 1e6 soft-core
             spectrum restricted to states with negligible doubly
             occupied weight (N in {2, 3}, two phases).
kronecker    chi = 0 soft-core spectrum vs pairwise sums of the 2D
             single-excitation eigenvalues (symmetric sector).
quadrature   integrate_2d against three closed-form zone integrals.
eigensolver  eigenvalue recovery of a matrix built from its own known
             factorization, plus the residual and trace contracts.
"""

import numpy as np
from scipy.optimize import linear_sum_assignment

from .lattice import (
    assemble_pair_hamiltonian,
    assemble_soft_core,
    doubly_occupied_weight,
    eigensolve,
)
from .model import ModelParams, build_h2d_single
from .numerics import QuadratureSpec, eig_complex_general, integrate_2d

SOFTCORE_CHI = 1e6
SOFTCORE_TOL = 1e-3
KRONECKER_TOL = 1e-8
QUADRATURE_TOL = 1e-8
DD_WEIGHT_CUT = 1e-3
_CASES = [(n, f) for n in (2, 3) for f in (0.6, 0.75)]


def matched_max_diff(w_a, w_b):
    """Max pairwise distance under the optimal one-to-one matching."""
    cost = np.abs(np.asarray(w_a)[:, None] - np.asarray(w_b)[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def check_softcore():
    details = []
    worst = 0.0
    counts_ok = True
    for n, frac in _CASES:
        params = ModelParams(phi=frac * np.pi, n_sites=n)
        w_hard, _ = eigensolve(assemble_pair_hamiltonian(params))
        w_soft, v_soft = eigensolve(assemble_soft_core(params, SOFTCORE_CHI))
        weights = doubly_occupied_weight(n, v_soft)
        kept = w_soft[weights < DD_WEIGHT_CUT]
        if kept.size != w_hard.size:
            counts_ok = False
            details.append({"n": n, "phi_over_pi": frac, "kept": int(kept.size)})
            continue
        diff = matched_max_diff(w_hard / 2.0, kept / 2.0)
        worst = max(worst, diff)
        details.append({"n": n, "phi_over_pi": frac, "max_diff": diff})
    return {
        "name": "softcore",
        "passed": bool(counts_ok and worst <= SOFTCORE_TOL),
        "tolerance": SOFTCORE_TOL,
        "worst": worst,
        "details": details,
    }


def check_kronecker():
    worst = 0.0
    details = []
    for n, frac in _CASES:
        params = ModelParams(phi=frac * np.pi, n_sites=n)
        w_free, _ = eigensolve(assemble_soft_core(params, 0.0))
        lam, _ = eigensolve(build_h2d_single(params))
        ii, jj = np.triu_indices(lam.size, k=0)
        w_kron = lam[ii] + lam[jj]
        diff = matched_max_diff(w_free / 2.0, w_kron / 2.0)
        worst = max(worst, diff)
        details.append({"n": n, "phi_over_pi": frac, "max_diff": diff})
    return {
        "name": "kronecker",
        "passed": bool(worst <= KRONECKER_TOL),
        "tolerance": KRONECKER_TOL,
        "worst": worst,
        "details": details,
    }


def check_quadrature():
    spec = QuadratureSpec(abs_tol=QUADRATURE_TOL)
    area = 4.0 * np.pi**2
    cases = [
        ("constant", lambda qx, qy: np.full_like(qx, 0.7), 0.7 * area),
        ("cos_cos", lambda qx, qy: np.cos(qx) * np.cos(qy), 0.0),
        (
            "lorentzian_1d",
            lambda qx, qy: 1.0 / (2.0 + np.cos(qx)) + 0.0 * qy,
            2.0 * np.pi * (2.0 * np.pi / np.sqrt(3.0)),
        ),
    ]
    details = []
    worst = 0.0
    for name, f, expected in cases:
        got = integrate_2d(f, spec)
        err = float(abs(got - expected))
        worst = max(worst, err)
        details.append({"case": name, "error": err})
    return {
        "name": "quadrature",
        "passed": bool(worst <= QUADRATURE_TOL),
        "tolerance": QUADRATURE_TOL,
        "worst": worst,
        "details": details,
    }


def check_eigensolver():
    rng = np.random.default_rng(20240831)
    size = 50
    known = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    mixing = np.eye(size) + 0.3 * (
        rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
    ) / np.sqrt(size)
    matrix = mixing @ np.diag(known) @ np.linalg.inv(mixing)
    w, v = eig_complex_general(matrix)  # residual and trace contracts enforced inside
    diff = matched_max_diff(w, known) / np.abs(known).max()
    residual = float(np.linalg.norm(matrix @ v - v * w, axis=0).max())
    rel_residual = residual / float(np.linalg.norm(matrix))
    return {
        "name": "eigensolver",
        "passed": bool(diff <= 1e-6 and rel_residual <= 1e-8),
        "relative_recovery_error": float(diff),
        "relative_residual": rel_residual,
    }


CHECKS = {
    "softcore": check_softcore,
    "kronecker": check_kronecker,
    "quadrature": check_quadrature,
    "eigensolver": check_eigensolver,
}


def run_checks(only=None):
    """Run the requested checks (all by default); returns the JSON report."""
    names = list(CHECKS) if not only else list(only)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown check(s): {', '.join(unknown)}")
    results = [CHECKS[name]() for name in names]
    return {"checks": results, "all_passed": all(r["passed"] for r in results)}
