"""polpair: two-polariton physics of a 2D waveguide-QED qubit lattice.

Computes the scattering continuum and its band gaps, the in-gap bound
pair (energy and relative wavefunction), and the full two-excitation
spectrum of finite lattices, all in units of the single-qubit decay
rate.
"""

import os as _os

# Reproducibility: multi-threaded BLAS reductions are not bit-stable
# across thread counts, so pin the pools before numpy loads. Explicit
# user settings win (setdefault only).
for _var in ("OPENBLAS_NUM_THREADS", "OMP_NUM_THREADS", "MKL_NUM_THREADS"):
    _os.environ.setdefault(_var, "1")
del _os, _var

__version__ = "0.1.0"

from .errors import (
    ConvergenceFailureError,
    DimensionError,
    DomainError,
    MaxIterationsError,
    NoGapError,
    NoSignChangeError,
    OutsideGapError,
    QuadratureFailureError,
    SingularityError,
)
from .model import GAMMA0, OMEGA0, ModelParams, build_h1d, build_h2d_single, h1d_element
from .numerics import Bracket, QuadratureSpec, eig_complex_general, find_root, integrate_2d
from .dispersion import (
    GapReport,
    WaveVector2,
    gap_interval,
    gap_map,
    gap_window,
    pair_dispersion,
    single_branch_energy,
)
from .bound import (
    BoundStateResult,
    RelativeWavefunction,
    bound_energy,
    bound_energy_approx,
    green_function,
    relative_wavefunction,
)
from .lattice import (
    EigenReport,
    PairAmplitudeField,
    PairBasis,
    assemble_pair_hamiltonian,
    assemble_soft_core,
    classify,
    eigensolve,
    localization_degree,
    spatial_distribution,
    two_excitation_spectrum,
)

__all__ = [
    "GAMMA0",
    "OMEGA0",
    "ModelParams",
    "h1d_element",
    "build_h1d",
    "build_h2d_single",
    "QuadratureSpec",
    "Bracket",
    "integrate_2d",
    "find_root",
    "eig_complex_general",
    "WaveVector2",
    "GapReport",
    "single_branch_energy",
    "pair_dispersion",
    "gap_window",
    "gap_interval",
    "gap_map",
    "BoundStateResult",
    "RelativeWavefunction",
    "green_function",
    "bound_energy",
    "bound_energy_approx",
    "relative_wavefunction",
    "PairBasis",
    "PairAmplitudeField",
    "EigenReport",
    "assemble_pair_hamiltonian",
    "assemble_soft_core",
    "eigensolve",
    "localization_degree",
    "spatial_distribution",
    "classify",
    "two_excitation_spectrum",
    "SingularityError",
    "OutsideGapError",
    "NoGapError",
    "NoSignChangeError",
    "DomainError",
    "QuadratureFailureError",
    "MaxIterationsError",
    "ConvergenceFailureError",
    "DimensionError",
]
