"""Shared numerical kernels: Brillouin-zone quadrature, bisection, eigensolver.

integrate_2d is a deterministic adaptive panel scheme: fixed 4x4 base
grid over the zone, tensor Gauss-Legendre of order 8 per panel, dyadic
subdivision driven by the difference between a panel's estimate and the
sum over its four children, exact (math.fsum) reduction. No threading,
no randomness: equal inputs give bit-equal results.
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import ConvergenceFailureError, MaxIterationsError, QuadratureFailureError

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(8)
_BASE_SPLIT = 4  # base panels per axis over the zone


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerance and refinement limits for integrate_2d.

    guard_band is bookkeeping for callers that exclude a half-width
    around known singular lines when building their integrand; the
    quadrature itself treats any non-finite sample as zero.
    """

    abs_tol: float = 1e-8
    max_depth: int = 14
    guard_band: float = 0.0

    def __post_init__(self):
        if self.abs_tol <= 0:
            raise ValueError("abs_tol must be positive")
        if self.max_depth < 4:
            raise ValueError("max_depth must be >= 4")
        if self.guard_band < 0:
            raise ValueError("guard_band must be >= 0")


@dataclass(frozen=True)
class Bracket:
    """Sign-changing interval [lo, hi] with the endpoint values recorded."""

    lo: float
    hi: float
    f_lo: float
    f_hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("bracket needs lo < hi")
        if np.sign(self.f_lo) == np.sign(self.f_hi):
            raise ValueError("bracket endpoints must differ in sign")


def _panel_estimates(f, panels):
    """Gauss-Legendre estimate for each (x0, x1, y0, y1) row of `panels`.

    f must accept equal-shaped coordinate arrays. Non-finite samples
    count as zero.
    """
    xm = 0.5 * (panels[:, 0] + panels[:, 1])
    xh = 0.5 * (panels[:, 1] - panels[:, 0])
    ym = 0.5 * (panels[:, 2] + panels[:, 3])
    yh = 0.5 * (panels[:, 3] - panels[:, 2])
    px = xm[:, None] + xh[:, None] * _GL_NODES
    py = ym[:, None] + yh[:, None] * _GL_NODES
    k = len(panels)
    xx = np.broadcast_to(px[:, :, None], (k, 8, 8))
    yy = np.broadcast_to(py[:, None, :], (k, 8, 8))
    vals = np.asarray(f(xx, yy), dtype=float)
    if not np.all(np.isfinite(vals)):
        vals = np.where(np.isfinite(vals), vals, 0.0)
    return xh * yh * np.einsum("kij,i,j->k", vals, _GL_WEIGHTS, _GL_WEIGHTS)


def _subdivide(panels):
    """Split each panel into its four dyadic children (row-major order)."""
    x0, x1, y0, y1 = panels.T
    xm, ym = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
    quads = [
        np.column_stack([x0, xm, y0, ym]),
        np.column_stack([x0, xm, ym, y1]),
        np.column_stack([xm, x1, y0, ym]),
        np.column_stack([xm, x1, ym, y1]),
    ]
    return np.stack(quads, axis=1).reshape(-1, 4)


def integrate_2d(f, spec=None):
    """Integral of f over the Brillouin zone (-pi, pi]^2.

    f must be vectorized (called with broadcast coordinate arrays) and
    finite away from guard bands; non-finite samples contribute zero.
    The result is within spec.abs_tol of the true integral for
    integrands the panel proxy can resolve; otherwise
    QuadratureFailureError is raised at spec.max_depth.
    """
    if spec is None:
        spec = QuadratureSpec()
    edges = np.linspace(-np.pi, np.pi, _BASE_SPLIT + 1)
    x0, y0 = np.meshgrid(edges[:-1], edges[:-1], indexing="ij")
    x1, y1 = np.meshgrid(edges[1:], edges[1:], indexing="ij")
    panels = np.column_stack([x0.ravel(), x1.ravel(), y0.ravel(), y1.ravel()])
    coarse = _panel_estimates(f, panels)

    total_area = 4.0 * np.pi**2
    accepted = []
    spent = 0.0  # error proxies of panels accepted so far
    for depth in range(spec.max_depth + 1):
        children = _subdivide(panels)
        child_est = _panel_estimates(f, children)
        refined = child_est.reshape(-1, 4).sum(axis=1)
        err = np.abs(refined - coarse)
        if spent + err.sum() <= spec.abs_tol:  # global budget met
            accepted.extend(refined.tolist())
            return math.fsum(accepted)
        # accept panels within an area-proportional slice of the budget,
        # keep refining the rest
        area = (panels[:, 1] - panels[:, 0]) * (panels[:, 3] - panels[:, 2])
        ok = err <= 0.5 * spec.abs_tol * area / total_area
        accepted.extend(refined[ok].tolist())
        spent += float(err[ok].sum())
        keep = ~ok
        panels = children.reshape(-1, 4, 4)[keep].reshape(-1, 4)
        coarse = child_est.reshape(-1, 4)[keep].ravel()
    raise QuadratureFailureError(
        f"{len(panels) // 4} panels unresolved at max_depth={spec.max_depth}"
    )


def find_root(f, bracket, tol=1e-6, max_iter=200, x_tol=None):
    """Bisection root of f inside the bracket; never evaluates outside it.

    Stops at |f(x)| <= tol, or at interval width <= x_tol (x_tol defaults
    to tol; pass 0 to demand the function criterion alone). Raises
    MaxIterationsError when neither is reached within max_iter steps.
    """
    if x_tol is None:
        x_tol = tol
    if bracket.f_lo == 0.0:
        return bracket.lo
    if bracket.f_hi == 0.0:
        return bracket.hi
    lo, hi, f_lo = bracket.lo, bracket.hi, bracket.f_lo
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if abs(f_mid) <= tol:
            return mid
        if np.sign(f_mid) == np.sign(f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
        if hi - lo <= x_tol:
            return 0.5 * (lo + hi)
    raise MaxIterationsError(f"no root to tolerance {tol} within {max_iter} bisections")


def eig_complex_general(a, residual_tol=1e-8, trace_tol=1e-6):
    """Full spectrum and right eigenvectors of a dense complex matrix.

    Backed by LAPACK's dense general solver; the contract enforced here
    is what callers rely on. Pairs come back sorted by (Re, Im); each
    satisfies ||A v - w v||_2 <= residual_tol * ||A||_F, and the
    eigenvalue sum matches trace(A) to trace_tol * ||A||_F.
    """
    a = np.ascontiguousarray(np.asarray(a, dtype=complex))
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    try:
        w, v = sla.eig(a)
    except sla.LinAlgError as exc:  # pragma: no cover - LAPACK rarely fails
        raise ConvergenceFailureError(str(exc)) from exc
    order = np.lexsort((w.imag, w.real))
    w, v = w[order], v[:, order]
    norm = max(np.linalg.norm(a), np.finfo(float).tiny)
    residuals = np.linalg.norm(a @ v - v * w, axis=0)
    bad = np.flatnonzero(residuals > residual_tol * norm)
    if bad.size:
        raise ConvergenceFailureError(
            f"{bad.size} eigenpairs violate the residual contract "
            f"(worst {residuals[bad].max():.3e} vs {residual_tol * norm:.3e})",
            indices=bad,
        )
    if abs(w.sum() - np.trace(a)) > trace_tol * norm:
        raise ConvergenceFailureError("eigenvalue sum does not match the trace")
    return w, v
