"""Synthetic noise, error metrics and empirical convergence rates.

Noise generator: NumPy's ``Philox`` (Philox4x64-10, counter-based) keyed by
``seed + 2**64 * stream``; draws are ``Generator.uniform(-1, 1)``.  Output is
bit-reproducible across platforms for a given (seed, stream).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DegenerateDataError, DomainError
from .spectral import GridField


@dataclass(frozen=True)
class NoiseSpec:
    """Uniform noise rescaled to quadrature L^2 norm ``eps``."""

    eps: float
    seed: int
    stream: int = 0

    def __post_init__(self) -> None:
        if not self.eps >= 0:
            raise DomainError(f"eps must be >= 0, got {self.eps}")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be a 64-bit unsigned integer")


def noise_generator(seed: int, stream: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed + (stream << 64)))


def add_noise(clean: GridField, spec: NoiseSpec) -> GridField:
    """``clean`` plus noise of L^2 norm exactly ``spec.eps``.

    Noise is drawn i.i.d. uniform on [-1, 1] at every interior node (boundary
    values are fixed by the Dirichlet condition) and then rescaled.
    """
    if spec.eps == 0.0:
        return GridField(clean.values.copy(), clean.grid)
    grid = clean.grid
    mask = grid.interior
    stream = spec.stream
    while True:
        eta = np.zeros(grid.n_nodes)
        eta[mask] = noise_generator(spec.seed, stream).uniform(-1.0, 1.0, int(mask.sum()))
        size = grid.norm(eta)
        if size > 0.0:
            break
        stream += 1
    return GridField(clean.values + eta * (spec.eps / size), grid)


def rel_error(u_exact: GridField, v: GridField) -> float:
    """100 * ||u - v|| / ||u|| in the quadrature L^2 norm."""
    ref = u_exact.norm()
    if ref == 0.0:
        raise DegenerateDataError("relative error of a zero field")
    return 100.0 * u_exact.grid.norm(u_exact.values - v.values) / ref


def rate_fit(pairs: Iterable[tuple[float, float]]) -> float:
    """Least-squares slope of log(err) against log(eps)."""
    arr = np.asarray(list(pairs), dtype=float)
    if arr.ndim != 2 or arr.shape[0] < 3 or np.unique(arr[:, 0]).size < 3:
        raise DegenerateDataError("rate_fit needs at least 3 distinct eps values")
    if np.any(arr <= 0):
        raise DegenerateDataError("rate_fit needs positive eps and errors")
    slope, _ = np.polyfit(np.log(arr[:, 0]), np.log(arr[:, 1]), 1)
    return float(slope)
