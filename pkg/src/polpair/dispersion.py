"""Two-polariton scattering continuum, band-gap search, and gap maps.

The pair energy at center-of-mass wave vector K and relative wave
vector q is half the sum of four single-polariton branch terms
sin(phi)/(cos(k) - cos(phi)) at k = (q_l +- K_l)/2. Both q components
live on (-pi, pi]; the continuum is 4pi-periodic in q (the half angles),
so that range is taken literally and nothing is folded.

Because the energy separates as eps = (X(qx) + Y(qy))/2, every value
attained on a refined grid is a pairwise sum of two 1D profiles. The
gap search exploits that: candidate uncovered intervals found on the
grid_n x grid_n sample are audited against 32x-refined profile sums
queried inside the candidate. Sampling artifacts (steep but finite
slopes, undersampled) fill in and drop below the width threshold; true
gaps contain no attained values at any resolution and survive with
polished edges.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import SingularityError

POLE_GUARD = 1e-8  # grid samples closer than this to a resonance are skipped
_SINGULAR_EPS = 1e-12  # machine-scale guard for direct point evaluation
_REFINE = 32  # 1D profile refinement factor for candidate verification
_MIN_BINS = 3  # uncovered intervals narrower than this many bins are noise


@dataclass(frozen=True)
class WaveVector2:
    """Wave vector (x, y), components in radians per lattice constant.

    The Brillouin-zone convention is (-pi, pi] per axis. Components are
    used exactly as given (no folding: the pair energy is 4pi-periodic
    in q, so a 2pi fold is not an identity).
    """

    x: float
    y: float


@dataclass(frozen=True)
class GapReport:
    """Largest continuum-free energy interval relevant for bound states.

    lower_edge/upper_edge are the attained values bounding the interval;
    delta is its width (0 with equal edges when no interval survives).
    window_lo/window_hi echo the interval (cot(phi), -tan(phi)) a bound
    state must intersect.
    """

    lower_edge: float
    upper_edge: float
    delta: float
    window_lo: float
    window_hi: float


def single_branch_energy(k, phi):
    """Energy of one free polariton branch, sin(phi)/(cos(k) - cos(phi)).

    Raises SingularityError within machine distance of the resonance
    cos(k) = cos(phi).
    """
    denom = np.cos(k) - np.cos(phi)
    if abs(denom) < _SINGULAR_EPS:
        raise SingularityError(f"branch energy singular at k={k!r} for phi={phi!r}")
    return float(np.sin(phi)) / float(denom)


def pair_dispersion(q, k_com, phi):
    """Continuum energy eps of a polariton pair: half the four-branch sum."""
    terms = [
        single_branch_energy(0.5 * (q.x + k_com.x), phi),
        single_branch_energy(0.5 * (q.x - k_com.x), phi),
        single_branch_energy(0.5 * (q.y + k_com.y), phi),
        single_branch_energy(0.5 * (q.y - k_com.y), phi),
    ]
    return 0.5 * math.fsum(terms)


def gap_window(phi):
    """The (cot(phi), -tan(phi)) energy window where a bound state may sit.

    Empty (lo >= hi) for phi < pi/2, which is why no bound pair exists
    there.
    """
    return float(1.0 / np.tan(phi)), float(-np.tan(phi))


def bz_axis(grid_n):
    """grid_n equally spaced points covering (-pi, pi]."""
    return np.linspace(-np.pi, np.pi, grid_n + 1)[1:]


def axis_profile(qs, k_component, phi, guard=POLE_GUARD):
    """Sum of the two branch terms along one axis; NaN inside pole guards."""
    d_plus = np.cos(0.5 * (qs + k_component)) - np.cos(phi)
    d_minus = np.cos(0.5 * (qs - k_component)) - np.cos(phi)
    bad = (np.abs(d_plus) < guard) | (np.abs(d_minus) < guard)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.sin(phi) / d_plus + np.sin(phi) / d_minus
    out[bad] = np.nan
    return out


def pair_energy_grid(qx, qy, k_com, phi):
    """Vectorized continuum energy for broadcast coordinate arrays.

    Resonant points come out non-finite; quadrature integrands divide by
    (eps_b - eps) so those limits are handled by the caller.
    """
    with np.errstate(divide="ignore", invalid="ignore"):
        ex = np.sin(phi) / (np.cos(0.5 * (qx + k_com.x)) - np.cos(phi)) + np.sin(phi) / (
            np.cos(0.5 * (qx - k_com.x)) - np.cos(phi)
        )
        ey = np.sin(phi) / (np.cos(0.5 * (qy + k_com.y)) - np.cos(phi)) + np.sin(phi) / (
            np.cos(0.5 * (qy - k_com.y)) - np.cos(phi)
        )
    return 0.5 * (ex + ey)


def _sums_inside(x_vals, y_sorted, lo, hi, cap=4_000_000):
    """Values (x+y)/2 strictly inside (lo, hi), x from x_vals, y from y_sorted.

    searchsorted per x value; if the total count exceeds cap the y hits
    are decimated evenly (the density stays far below the bin width).
    """
    lo_idx = np.searchsorted(y_sorted, 2.0 * lo - x_vals, side="right")
    hi_idx = np.searchsorted(y_sorted, 2.0 * hi - x_vals, side="left")
    counts = np.maximum(hi_idx - lo_idx, 0)
    total = int(counts.sum())
    if total == 0:
        return np.empty(0)
    step = max(1, int(np.ceil(total / cap)))
    chunks = []
    for i in np.flatnonzero(counts):
        ys = y_sorted[lo_idx[i] : hi_idx[i] : step]
        if ys.size:
            chunks.append(0.5 * (x_vals[i] + ys))
    if not chunks:
        return np.empty(0)
    return np.concatenate(chunks)


def gap_interval(k_com, phi, grid_n=1001):
    """Band-gap search at one (K, phi) point.

    Samples eps on a grid_n x grid_n q-grid (pole guard bands skipped),
    collects the finite values, and returns the largest uncovered energy
    interval whose closure intersects the window (cot(phi), -tan(phi)),
    after auditing each candidate against refined 1D profile sums.
    Intervals narrower than 3 energy bins, bin = window span / grid_n,
    are discarded as sampling noise. No surviving interval means
    delta = 0 with equal edges.
    """
    if grid_n < 64:
        raise ValueError(f"grid_n must be >= 64, got {grid_n}")
    win_lo, win_hi = gap_window(phi)
    if not win_lo < win_hi:
        return GapReport(0.0, 0.0, 0.0, win_lo, win_hi)
    threshold = _MIN_BINS * (win_hi - win_lo) / grid_n

    qs = bz_axis(grid_n)
    x = axis_profile(qs, k_com.x, phi)
    y = axis_profile(qs, k_com.y, phi)
    eps = 0.5 * (x[:, None] + y[None, :])
    vals = np.sort(eps[np.isfinite(eps)], kind="stable")
    if vals.size < 2:
        return GapReport(0.0, 0.0, 0.0, win_lo, win_hi)
    widths = np.diff(vals)
    candidate = (widths > threshold) & (vals[1:] > win_lo) & (vals[:-1] < win_hi)
    if not candidate.any():
        return GapReport(0.0, 0.0, 0.0, win_lo, win_hi)

    qs_fine = bz_axis(_REFINE * grid_n)
    x_fine = axis_profile(qs_fine, k_com.x, phi)
    y_fine = axis_profile(qs_fine, k_com.y, phi)
    x_fine = x_fine[np.isfinite(x_fine)]
    y_fine = np.sort(y_fine[np.isfinite(y_fine)], kind="stable")

    best = None
    for k in np.flatnonzero(candidate):
        lo, hi = vals[k], vals[k + 1]
        inside = np.sort(_sums_inside(x_fine, y_fine, lo, hi), kind="stable")
        pts = np.concatenate(([lo], inside, [hi]))
        sub = np.diff(pts)
        good = (sub > threshold) & (pts[1:] > win_lo) & (pts[:-1] < win_hi)
        if not good.any():
            continue
        idx = np.flatnonzero(good)
        j = idx[np.argmax(sub[idx])]
        if best is None or sub[j] > best[2]:
            best = (pts[j], pts[j + 1], sub[j])
    if best is None:
        return GapReport(0.0, 0.0, 0.0, win_lo, win_hi)
    return GapReport(float(best[0]), float(best[1]), float(best[2]), win_lo, win_hi)


def _gap_point(args):
    phi, kx, ky, grid_n = args
    return gap_interval(WaveVector2(kx, ky), phi, grid_n)


def gap_map(points, grid_n=1001, n_workers=None):
    """gap_interval over an iterable of (phi, WaveVector2) points.

    Rows are independent; with n_workers > 1 they are farmed out to
    worker processes and reassembled in input order, so the result (and
    anything written from it) does not depend on the worker count.
    """
    jobs = [(phi, k.x, k.y, grid_n) for phi, k in points]
    if not jobs:
        raise ValueError("gap_map needs at least one sweep point")
    if n_workers is not None and n_workers > 1 and len(jobs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        chunk = max(1, len(jobs) // (8 * n_workers))
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            return list(pool.map(_gap_point, jobs, chunksize=chunk))
    return [_gap_point(job) for job in jobs]
