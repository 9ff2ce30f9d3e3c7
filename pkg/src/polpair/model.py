"""Single-excitation effective Hamiltonians of the waveguide-coupled lattice.

One horizontal (or vertical) waveguide couples every qubit in its row to
every other through photon exchange, giving the infinite-range kernel
-i * gamma0 * exp(i*phi*|m-n|). All energies are measured in units of the
single-qubit decay rate gamma0, and the bare qubit frequency omega0 is
dropped: it only shifts every eigenvalue rigidly (a Lamb-type shift).
The waveguide speed and lattice spacing never appear separately - they
enter only through the phase phi accumulated between neighbouring sites.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import toeplitz

GAMMA0 = 1.0  # single-qubit radiative decay rate; the energy unit
OMEGA0 = 0.0  # qubit resonance, absorbed as a global shift


@dataclass(frozen=True)
class ModelParams:
    """Physics configuration of the lattice.

    phi     -- phase accumulated between adjacent qubits, in (0, pi).
               Bound-state formulas additionally need phi in (pi/2, pi);
               that is enforced where it matters, not here.
    n_sites -- qubits per lattice side (N), >= 1.

    gamma0 and omega0 are fixed conventions (1 and 0), not knobs.
    """

    phi: float
    n_sites: int

    def __post_init__(self):
        if not 0.0 < self.phi < np.pi:
            raise ValueError(f"phi must lie in (0, pi), got {self.phi!r}")
        if int(self.n_sites) != self.n_sites or self.n_sites < 1:
            raise ValueError(f"n_sites must be a positive integer, got {self.n_sites!r}")

    @property
    def gamma0(self):
        return GAMMA0

    @property
    def omega0(self):
        return OMEGA0


def h1d_element(m, n, params):
    """Waveguide-mediated coupling between sites m and n of one 1D array.

    Depends only on |m - n|; equals -i*exp(i*phi*|m-n|) in gamma0 units
    (the diagonal is the bare -i*gamma0 decay term).
    """
    if m < 0 or n < 0:
        raise ValueError("site indices must be non-negative")
    return complex(-1j * GAMMA0 * np.exp(1j * params.phi * abs(m - n)))


def build_h1d(params):
    """Dense 1D effective Hamiltonian (N x N).

    Complex symmetric Toeplitz (equal to its transpose, not its adjoint):
    the anti-Hermitian part is -i times a rank-<=2 positive-semidefinite
    cosine kernel, which is what makes every eigenvalue decay.
    """
    n = params.n_sites
    col = -1j * GAMMA0 * np.exp(1j * params.phi * np.arange(n))
    return toeplitz(col, col)


def build_h2d_single(params):
    """Single-excitation Hamiltonian of the N x N lattice (N^2 x N^2).

    Kronecker sum of the two waveguide directions; its spectrum is all
    pairwise sums of the 1D eigenvalues.
    """
    h = build_h1d(params)
    eye = np.eye(params.n_sites)
    return np.kron(h, eye) + np.kron(eye, h)
