import numpy as np
import pytest
from types import SimpleNamespace

from polpair import (
    ModelParams,
    build_h1d,
    build_h2d_single,
    eigensolve,
    h1d_element,
)
from polpair.validate import matched_max_diff


def test_h1d_element_diagonal_is_pure_decay():
    params = ModelParams(phi=0.3 * np.pi, n_sites=2)
    assert h1d_element(5, 5, params) == -1j


def test_h1d_element_neighbour_value():
    params = ModelParams(phi=0.75 * np.pi, n_sites=2)
    val = h1d_element(0, 1, params)
    assert val == pytest.approx(0.7071068 + 0.7071068j, abs=1e-7)


def test_h1d_element_two_sites_apart_at_zone_boundary_phase():
    # phi = pi sits outside ModelParams' open interval; the kernel itself
    # is still well defined there (e^{2*pi*i} = 1).
    val = h1d_element(3, 5, SimpleNamespace(phi=np.pi))
    assert val == pytest.approx(-1j, abs=1e-12)


def test_h1d_element_depends_only_on_distance():
    params = ModelParams(phi=1.1, n_sites=4)
    for k in (1, 3, 10):
        assert h1d_element(2, 5, params) == h1d_element(2 + k, 5 + k, params)


def test_h1d_element_rejects_negative_indices():
    params = ModelParams(phi=1.0, n_sites=2)
    with pytest.raises(ValueError):
        h1d_element(-1, 0, params)


def test_params_validation():
    with pytest.raises(ValueError):
        ModelParams(phi=0.0, n_sites=2)
    with pytest.raises(ValueError):
        ModelParams(phi=np.pi, n_sites=2)
    with pytest.raises(ValueError):
        ModelParams(phi=1.0, n_sites=0)
    params = ModelParams(phi=1.0, n_sites=3)
    assert params.gamma0 == 1.0 and params.omega0 == 0.0


def test_build_h1d_single_site():
    h = build_h1d(ModelParams(phi=0.5, n_sites=1))
    assert h.shape == (1, 1) and h[0, 0] == -1j


def test_build_h1d_complex_symmetric_toeplitz():
    h = build_h1d(ModelParams(phi=0.75 * np.pi, n_sites=3))
    assert np.abs(h - h.T).max() == 0.0
    # constant diagonals
    assert h[0, 1] == h[1, 2]
    assert h[0, 0] == h[1, 1] == h[2, 2] == -1j


@pytest.mark.parametrize("n,phi", [(3, 0.3 * np.pi), (6, 0.75 * np.pi), (9, 0.9 * np.pi)])
def test_h1d_anti_hermitian_part_is_low_rank_psd(n, phi):
    h = build_h1d(ModelParams(phi=phi, n_sites=n))
    c = -(h - h.conj().T) / 2j  # cos(phi*(m-n)) kernel
    w = np.linalg.eigvalsh(c)
    assert w.min() >= -1e-10
    assert (np.abs(w) > 1e-10).sum() <= 2


@pytest.mark.parametrize("n,phi", [(4, 0.75 * np.pi), (7, 0.4 * np.pi)])
def test_passivity_of_single_excitation_spectra(n, phi):
    params = ModelParams(phi=phi, n_sites=n)
    for mat in (build_h1d(params), build_h2d_single(params)):
        w, _ = eigensolve(mat)
        assert w.imag.max() <= 1e-9


def test_build_h2d_single_site():
    h2 = build_h2d_single(ModelParams(phi=0.6, n_sites=1))
    assert h2.shape == (1, 1) and h2[0, 0] == -2j


def test_build_h2d_spectrum_is_pairwise_sums():
    params = ModelParams(phi=0.75 * np.pi, n_sites=2)
    lam, _ = eigensolve(build_h1d(params))
    w2, _ = eigensolve(build_h2d_single(params))
    ii, jj = np.meshgrid(range(2), range(2))
    sums = (lam[ii.ravel()] + lam[jj.ravel()])
    assert matched_max_diff(w2, sums) < 1e-10


def test_build_h2d_trace():
    h2 = build_h2d_single(ModelParams(phi=0.75 * np.pi, n_sites=4))
    assert np.trace(h2) == pytest.approx(-2j * 16, abs=1e-12)


def test_build_h2d_complex_symmetric():
    h2 = build_h2d_single(ModelParams(phi=1.9, n_sites=3))
    assert np.abs(h2 - h2.T).max() == 0.0
