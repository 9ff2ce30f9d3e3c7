import numpy as np
import pytest

from polpair import (
    SingularityError,
    WaveVector2,
    gap_interval,
    gap_map,
    gap_window,
    pair_dispersion,
    single_branch_energy,
)

PI = np.pi
K_PI0 = WaveVector2(PI, 0.0)
PHI34 = 0.75 * PI


def test_single_branch_values():
    assert single_branch_energy(0.0, PHI34) == pytest.approx(0.4142136, abs=1e-7)
    assert single_branch_energy(PI, PHI34) == pytest.approx(-2.4142136, abs=1e-7)


def test_single_branch_singularity():
    with pytest.raises(SingularityError):
        single_branch_energy(PI / 2, PI / 2)


def test_pair_dispersion_spot_values():
    assert pair_dispersion(WaveVector2(0, 0), K_PI0, PHI34) == pytest.approx(
        1.4142136, abs=1e-7
    )
    assert pair_dispersion(WaveVector2(PI, PI), K_PI0, PHI34) == pytest.approx(0.0, abs=1e-12)


def test_pair_dispersion_is_half_sum_of_branches():
    q, k = WaveVector2(0.7, -1.1), WaveVector2(0.4, 2.2)
    phi = 0.6 * PI
    manual = 0.5 * sum(
        single_branch_energy(0.5 * (qc + s * kc), phi)
        for qc, kc in ((q.x, k.x), (q.y, k.y))
        for s in (1, -1)
    )
    assert pair_dispersion(q, k, phi) == pytest.approx(manual, rel=1e-14)


def test_pair_dispersion_reflection_symmetry():
    rng = np.random.default_rng(3)
    k = WaveVector2(0.9, -0.3)
    for _ in range(20):
        qx, qy = rng.uniform(-PI, PI, 2)
        base = pair_dispersion(WaveVector2(qx, qy), k, PHI34)
        assert pair_dispersion(WaveVector2(-qx, qy), k, PHI34) == pytest.approx(base, rel=1e-12)
        assert pair_dispersion(WaveVector2(qx, -qy), k, PHI34) == pytest.approx(base, rel=1e-12)


def test_pair_dispersion_axis_exchange():
    rng = np.random.default_rng(5)
    k = WaveVector2(1.3, -0.8)
    k_swap = WaveVector2(k.y, k.x)
    for _ in range(10):
        qx, qy = rng.uniform(-PI, PI, 2)
        assert pair_dispersion(WaveVector2(qx, qy), k, 0.8 * PI) == pytest.approx(
            pair_dispersion(WaveVector2(qy, qx), k_swap, 0.8 * PI), rel=1e-12
        )


def test_gap_window_at_three_quarters_pi():
    lo, hi = gap_window(PHI34)
    assert lo == pytest.approx(-1.0, abs=1e-12)
    assert hi == pytest.approx(1.0, abs=1e-12)


def test_gap_interval_reference_configuration():
    report = gap_interval(K_PI0, PHI34, grid_n=1001)
    assert report.lower_edge == pytest.approx(0.0, abs=1e-3)
    assert report.upper_edge == pytest.approx(np.sqrt(2.0), abs=1e-3)
    assert report.delta == pytest.approx(np.sqrt(2.0), abs=2e-3)
    assert report.window_lo == pytest.approx(-1.0, abs=1e-12)
    assert report.window_hi == pytest.approx(1.0, abs=1e-12)


def test_gap_interval_delta_consistency():
    report = gap_interval(K_PI0, PHI34, grid_n=257)
    assert report.delta == pytest.approx(
        max(0.0, report.upper_edge - report.lower_edge), rel=1e-12
    )


@pytest.mark.parametrize("frac", [0.10, 0.25, 0.40, 0.45])
def test_gap_absent_below_half_pi(frac):
    report = gap_interval(K_PI0, frac * PI, grid_n=257)
    assert report.delta == 0.0
    assert report.lower_edge == report.upper_edge


@pytest.mark.parametrize("k", [WaveVector2(0.0, 0.0), WaveVector2(0.8 * PI, 0.8 * PI)])
def test_gapless_shapes_at_085_pi(k):
    report = gap_interval(k, 0.85 * PI, grid_n=1001)
    assert report.delta == 0.0


def test_gap_invariant_under_k_sign_flip():
    base = gap_interval(K_PI0, PHI34, grid_n=501)
    for k in (WaveVector2(-PI, 0.0), WaveVector2(PI, -0.0)):
        other = gap_interval(k, PHI34, grid_n=501)
        assert other.delta == pytest.approx(base.delta, abs=1e-9)
        assert other.lower_edge == pytest.approx(base.lower_edge, abs=1e-9)


def test_gap_monotone_refinement():
    for phi, k in ((PHI34, K_PI0), (0.85 * PI, WaveVector2(0.8 * PI, 0.8 * PI))):
        d1 = gap_interval(k, phi, grid_n=1001).delta
        d2 = gap_interval(k, phi, grid_n=2001).delta
        assert abs(d2 - d1) < 5e-3


def test_gap_interval_rejects_coarse_grid():
    with pytest.raises(ValueError):
        gap_interval(K_PI0, PHI34, grid_n=63)


def test_gap_map_matches_pointwise():
    points = [(PHI34, K_PI0), (0.4 * PI, K_PI0), (0.85 * PI, WaveVector2(0.0, 0.0))]
    rows = gap_map(points, grid_n=257)
    for (phi, k), row in zip(points, rows):
        solo = gap_interval(k, phi, grid_n=257)
        assert row == solo


def test_gap_map_parallel_equals_serial():
    points = [(f * PI, K_PI0) for f in (0.3, 0.6, 0.75, 0.85)]
    serial = gap_map(points, grid_n=257, n_workers=1)
    parallel = gap_map(points, grid_n=257, n_workers=2)
    assert serial == parallel


def test_gap_map_rejects_empty_sweep():
    with pytest.raises(ValueError):
        gap_map([], grid_n=257)
