"""Forward problem: initial state -> state at time t by eigenfunction expansion."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError
from .mlf import mittag_leffler
from .spectral import EigenSystem, GridField, SpectralCoeffs, project


@dataclass(frozen=True, eq=False)
class ProblemSpec:
    """A forward problem instance.

    ``u0`` is either sampled on the system grid or given by (closed-form)
    coefficients; coefficients past ``u0.N`` are taken to be zero.
    """

    gamma: float
    T: float
    system: EigenSystem
    u0: GridField | SpectralCoeffs

    def __post_init__(self) -> None:
        if not 0.0 < self.gamma < 1.0:
            raise DomainError(f"gamma must lie in (0, 1), got {self.gamma}")
        if not self.T > 0.0:
            raise DomainError(f"T must be positive, got {self.T}")

    def initial_coeffs(self, N: int) -> SpectralCoeffs:
        if N > self.system.n_modes:
            raise DimensionError(f"N={N} exceeds the {self.system.n_modes} modes")
        if isinstance(self.u0, SpectralCoeffs):
            return self.u0.padded(N)
        return project(self.u0, self.system, N)


def decay_factors(lambdas: np.ndarray, gamma: float, t: float) -> np.ndarray:
    """E_{gamma,1}(-lambda_n t^gamma) for every mode."""
    return mittag_leffler(gamma, 1.0, -np.asarray(lambdas, dtype=float) * t**gamma)


def forward_solve(spec: ProblemSpec, t: float, N_p: int) -> SpectralCoeffs:
    """Coefficients of u(t) truncated to the first ``N_p`` modes."""
    if not 0.0 <= t <= spec.T:
        raise DomainError(f"t={t} outside [0, {spec.T}]")
    if not 1 <= N_p <= spec.system.n_modes:
        raise DimensionError(f"N_p={N_p} outside [1, {spec.system.n_modes}]")
    c0 = spec.initial_coeffs(N_p)
    if t == 0.0:
        return c0
    return SpectralCoeffs(decay_factors(c0.lambdas, spec.gamma, t) * c0.values, spec.system)
