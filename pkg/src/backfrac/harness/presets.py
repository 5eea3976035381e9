"""Problem presets: the three benchmark initial conditions on (0, pi)^d."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from ..errors import ConfigError
from ..spectral import EigenSystem, laplacian_1d, laplacian_2d


def _example1_u0(x):
    return np.sin(x) + np.sin(2 * x) + np.sin(3 * x)


def _example1_coeffs(system: EigenSystem) -> np.ndarray:
    c = np.zeros(system.n_modes)
    c[:3] = np.sqrt(np.pi / 2)
    return c


def _example2_u0(x):
    return np.where(x < np.pi / 2, x, np.pi - x)


def _example2_coeffs(system: EigenSystem) -> np.ndarray:
    n = system.indices[:, 0].astype(float)
    return 2 * np.sqrt(2) / (n**2 * np.sqrt(np.pi)) * np.sin(n * np.pi / 2)


def _example3_u0(x, y):
    return np.sin(x) * np.sin(y) + np.sin(2 * x) * np.sin(y)


def _example3_coeffs(system: EigenSystem) -> np.ndarray:
    idx = system.indices
    hit = ((idx[:, 0] == 1) | (idx[:, 0] == 2)) & (idx[:, 1] == 1)
    return np.where(hit, np.pi / 2, 0.0)


@dataclass(frozen=True)
class Preset:
    """Defaults and closed forms for one benchmark problem.

    The eigensystem keeps ``n_grid - 2`` modes per axis, all that the grid
    resolves; noise projected onto it is therefore captured in full.
    """

    name: str
    dim: int
    n_grid: int
    N_p: int
    N_i: int
    u0: Callable[..., np.ndarray]
    coeffs: Callable[[EigenSystem], np.ndarray]

    def system(self, n_grid: int | None = None) -> EigenSystem:
        return _system(self.dim, n_grid or self.n_grid)


@lru_cache(maxsize=8)
def _system(dim: int, n_grid: int) -> EigenSystem:
    if dim == 1:
        return laplacian_1d(n_grid - 2, n_grid)
    return laplacian_2d(n_grid - 2, n_grid - 2, n_grid)


PRESETS = {
    "example1": Preset("example1", 1, 201, 3, 5, _example1_u0, _example1_coeffs),
    "example2": Preset("example2", 1, 201, 30, 5, _example2_u0, _example2_coeffs),
    # N_p = 100: as many modes as the n, m <= 10 enumeration.
    "example3": Preset("example3", 2, 101, 100, 10, _example3_u0, _example3_coeffs),
}


def get_preset(name: str) -> Preset:
    try:
        return PRESETS[name.lower()]
    except KeyError:
        raise ConfigError(
            f"unknown preset {name!r}; choose from {', '.join(PRESETS)}"
        ) from None
