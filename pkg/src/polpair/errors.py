"""Exception types shared across the package."""


class SingularityError(ValueError):
    """Branch energy requested on (or too close to) a polariton resonance."""


class OutsideGapError(ValueError):
    """Energy argument does not lie inside the open band gap."""


class NoGapError(RuntimeError):
    """No band gap at this (K, phi): the bound-state problem has no bracket."""


class NoSignChangeError(RuntimeError):
    """Green's function has the same sign at both gap edges; no bracketed root."""


class DomainError(ValueError):
    """Argument outside the validity domain of a closed-form expression."""


class QuadratureFailureError(RuntimeError):
    """Adaptive quadrature hit max_depth before reaching the tolerance."""


class MaxIterationsError(RuntimeError):
    """Root finder exhausted its iteration budget."""


class ConvergenceFailureError(RuntimeError):
    """Eigensolver failed, or its results violate the residual contract."""

    def __init__(self, message, indices=()):
        super().__init__(message)
        self.indices = tuple(indices)


class DimensionError(ValueError):
    """Lattice too small (or too large without override) for the request."""
