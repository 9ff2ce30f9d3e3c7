"""Bound polariton pairs: Green's-function root, closed form, wavefunction.

A bound pair shows up as the in-gap zero of the zone integral
G0(eps) = int dq / (eps - eps_q), which is strictly decreasing across
the gap (its derivative is -int dq/(eps - eps_q)^2). The root is found
by bisection between the gap edges pulled inward by a small margin (the
integral diverges logarithmically at the edges themselves). The relative
wavefunction is the same integral with a cos(qx*dx + qy*dy) numerator,
normalized to unit peak amplitude.
"""

from dataclasses import dataclass

import numpy as np

from .dispersion import GapReport, gap_interval, pair_energy_grid
from .errors import DomainError, NoGapError, NoSignChangeError, OutsideGapError
from .numerics import Bracket, QuadratureSpec, find_root, integrate_2d

EDGE_MARGIN = 1e-3  # bracket shrink inside the gap edges, in gamma0 units


@dataclass(frozen=True)
class BoundStateResult:
    """Bound-pair energy with the residual and bracket that produced it."""

    energy: float
    residual: float
    gap: GapReport
    method: str  # "numeric" | "approximate"


@dataclass(frozen=True)
class RelativeWavefunction:
    """Real pair amplitudes on the (dx, dy) grid [-dmax, dmax]^2.

    Normalized to max |amplitude| = 1; amplitudes[dmax, dmax] is the
    (0, 0) point, which vanishes at the bound energy by construction.
    """

    dmax: int
    amplitudes: np.ndarray

    def amp(self, dx, dy):
        """Amplitude at relative offset (dx, dy)."""
        if abs(dx) > self.dmax or abs(dy) > self.dmax:
            raise IndexError(f"offset ({dx}, {dy}) outside dmax={self.dmax}")
        return float(self.amplitudes[dx + self.dmax, dy + self.dmax])


def green_function(eps, k_com, phi, tol=1e-8, gap=None, grid_n=1001):
    """Zone integral int dq / (eps - eps_q) for eps inside the open gap.

    tol is the absolute quadrature accuracy. The gap bracket is computed
    at grid_n unless an existing GapReport is passed in.
    """
    if gap is None:
        gap = gap_interval(k_com, phi, grid_n)
    if gap.delta <= 0.0 or not gap.lower_edge < eps < gap.upper_edge:
        raise OutsideGapError(
            f"eps={eps} not inside the open gap ({gap.lower_edge}, {gap.upper_edge})"
        )

    def integrand(qx, qy):
        val = 1.0 / (eps - pair_energy_grid(qx, qy, k_com, phi))
        return np.nan_to_num(val, nan=0.0, posinf=0.0, neginf=0.0)

    return integrate_2d(integrand, QuadratureSpec(abs_tol=tol))


def bound_energy(k_com, phi, tol=1e-6, grid_n=1001, quad_tol=None):
    """Bound-pair energy: the unique in-gap root of green_function.

    Bisection between the gap edges shrunk inward by EDGE_MARGIN;
    returns with |G0(eps_b)| <= tol. Raises NoGapError when the gap is
    absent (no bound state there) and NoSignChangeError when the edge
    evaluations share a sign - reported, not papered over, since the
    monotonicity argument is only established for gapped K like (pi, 0).
    """
    gap = gap_interval(k_com, phi, grid_n)
    if gap.delta <= 0.0:
        raise NoGapError(f"no band gap at K=({k_com.x}, {k_com.y}), phi={phi}")
    lo = gap.lower_edge + EDGE_MARGIN
    hi = gap.upper_edge - EDGE_MARGIN
    if not lo < hi:
        raise NoGapError(f"gap delta={gap.delta} narrower than twice the edge margin")
    if quad_tol is None:
        quad_tol = min(1e-8, 0.01 * tol)
    g = lambda e: green_function(e, k_com, phi, tol=quad_tol, gap=gap)
    g_lo, g_hi = g(lo), g(hi)
    if np.sign(g_lo) == np.sign(g_hi):
        raise NoSignChangeError(
            f"G0 has the same sign at both shrunk edges ({g_lo:.3e}, {g_hi:.3e})"
        )
    root = find_root(g, Bracket(lo, hi, g_lo, g_hi), tol=tol, x_tol=0.0, max_iter=200)
    return BoundStateResult(energy=float(root), residual=abs(g(root)), gap=gap, method="numeric")


def bound_energy_approx(phi):
    """Closed-form bound energy 2*cot(2*phi) + arctanh(cot(phi/2)).

    Valid at K = (pi, 0) for phi strictly inside (pi/2, pi); both
    endpoints are singular (arctanh(1) and the cot(2*phi) pole).
    """
    if not np.pi / 2 < phi < np.pi:
        raise DomainError(f"closed form needs pi/2 < phi < pi, got {phi!r}")
    return float(2.0 / np.tan(2.0 * phi) + np.arctanh(1.0 / np.tan(0.5 * phi)))


def relative_wavefunction(result, k_com, phi, dmax, tol=1e-6):
    """Bound-pair relative wavefunction on the offset grid [-dmax, dmax]^2.

    Each amplitude is the zone integral of cos(qx*dx + qy*dy) over
    (eps_b - eps_q), evaluated independently (so the mirror symmetries
    are a genuine check on the quadrature, not baked in), then the grid
    is scaled to unit peak amplitude.
    """
    if result.method != "numeric":
        raise ValueError("wavefunction needs a numeric bound energy, not the closed form")
    if dmax < 1:
        raise ValueError(f"dmax must be >= 1, got {dmax}")
    eps_b = result.energy
    spec = QuadratureSpec(abs_tol=tol)
    offsets = range(-dmax, dmax + 1)
    amplitudes = np.empty((2 * dmax + 1, 2 * dmax + 1))
    for ix, dx in enumerate(offsets):
        for iy, dy in enumerate(offsets):

            def integrand(qx, qy, dx=dx, dy=dy):
                val = np.cos(qx * dx + qy * dy) / (eps_b - pair_energy_grid(qx, qy, k_com, phi))
                return np.nan_to_num(val, nan=0.0, posinf=0.0, neginf=0.0)

            amplitudes[ix, iy] = integrate_2d(integrand, spec)
    peak = np.abs(amplitudes).max()
    return RelativeWavefunction(dmax=dmax, amplitudes=amplitudes / peak)
