"""Eigensystems of Dirichlet Laplacians, grids, projection and Sobolev norms.

Both concrete operators are tensor products of the 1D sine basis on
``[0, pi]``, so every eigenfunction factorizes as
``phi_{n,m}(x, y) = s_n(x) s_m(y)`` with ``s_n = sqrt(2/pi) sin(n .)``.
Projection and synthesis are therefore done one axis at a time, which keeps
memory at ``O(modes_per_axis * nodes_per_axis)`` even for 10^4 modes in 2D.

Inner products use the composite trapezoid rule.  On a grid with ``M``
intervals the sampled sines ``s_1 .. s_{M-1}`` are exactly orthonormal under
that rule (the discrete sine transform), which is why the presets retain
``n_grid - 2`` modes per axis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DimensionError, DomainError


@dataclass(frozen=True, eq=False)
class Grid:
    """Uniform tensor grid on ``[0, pi]^dim`` with trapezoid weights.

    ``points`` is ``(n_nodes, dim)`` in C order over ``axes`` (``ij``
    indexing), matching the layout of :class:`GridField` values.
    """

    axes: tuple[np.ndarray, ...]
    axis_weights: tuple[np.ndarray, ...]

    @property
    def dim(self) -> int:
        return len(self.axes)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(a.size for a in self.axes)

    @property
    def n_nodes(self) -> int:
        return int(np.prod(self.shape))

    @property
    def weights(self) -> np.ndarray:
        w = self.axis_weights[0]
        for wk in self.axis_weights[1:]:
            w = np.multiply.outer(w, wk)
        return np.ravel(w)

    @property
    def points(self) -> np.ndarray:
        mesh = np.meshgrid(*self.axes, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=1)

    @property
    def interior(self) -> np.ndarray:
        """Mask of nodes off the boundary, where Dirichlet data is free."""
        masks = []
        for a in self.axes:
            m = np.ones(a.size, dtype=bool)
            m[0] = m[-1] = False
            masks.append(m)
        mask = masks[0]
        for mk in masks[1:]:
            mask = np.logical_and.outer(mask, mk)
        return np.ravel(mask)

    def inner(self, a: np.ndarray, b: np.ndarray) -> float:
        return float(np.dot(self.weights, np.asarray(a) * np.asarray(b)))

    def norm(self, a: np.ndarray) -> float:
        return float(np.sqrt(self.inner(a, a)))


def uniform_grid(n_grid: int, dim: int = 1) -> Grid:
    if n_grid < 3:
        raise DomainError("n_grid must be >= 3")
    x = np.linspace(0.0, np.pi, n_grid)
    w = np.full(n_grid, np.pi / (n_grid - 1))
    w[0] = w[-1] = 0.5 * w[0]
    return Grid(axes=(x,) * dim, axis_weights=(w,) * dim)


def sine_mode(n: int) -> Callable[[np.ndarray], np.ndarray]:
    """The normalized 1D Dirichlet eigenfunction sqrt(2/pi) sin(n x)."""
    c = np.sqrt(2.0 / np.pi)
    return lambda x: c * np.sin(n * np.asarray(x))


@dataclass(frozen=True, eq=False)
class GridField:
    """Samples of a function at the nodes of ``grid``."""

    values: np.ndarray
    grid: Grid

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=float).ravel()
        if vals.size != self.grid.n_nodes:
            raise DimensionError(
                f"{vals.size} values for a grid of {self.grid.n_nodes} nodes"
            )
        object.__setattr__(self, "values", vals)

    def norm(self) -> float:
        return self.grid.norm(self.values)

    @classmethod
    def from_function(cls, func: Callable[..., np.ndarray], grid: Grid) -> "GridField":
        pts = grid.points
        return cls(func(*pts.T), grid)


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Eigenpairs of a tensor-product Dirichlet Laplacian on ``[0, pi]^dim``.

    ``indices[k]`` holds the per-axis wavenumbers of mode ``k``; modes are
    ordered by eigenvalue, ties broken lexicographically on the indices.
    """

    indices: np.ndarray
    lambdas: np.ndarray
    grid: Grid
    domain: str
    _factors: tuple[np.ndarray, ...] = field(repr=False, default=())

    def __post_init__(self) -> None:
        if not self._factors:
            kmax = self.indices.max(axis=0)
            factors = tuple(
                np.sqrt(2.0 / np.pi)
                * np.sin(np.outer(np.arange(1, kmax[d] + 1), self.grid.axes[d]))
                for d in range(self.grid.dim)
            )
            object.__setattr__(self, "_factors", factors)

    @property
    def n_modes(self) -> int:
        return int(self.lambdas.size)

    def eigenfunction(self, k: int) -> Callable[..., np.ndarray]:
        idx = self.indices[k]
        fs = [sine_mode(int(n)) for n in idx]

        def phi(*coords):
            out = fs[0](coords[0])
            for f, c in zip(fs[1:], coords[1:]):
                out = out * f(c)
            return out

        return phi

    def mode_values(self, k: int) -> np.ndarray:
        """Eigenfunction ``k`` sampled on the grid."""
        return self.eigenfunction(k)(*self.grid.points.T)

    def _check_count(self, n: int) -> None:
        if not 1 <= n <= self.n_modes:
            raise DimensionError(f"requested {n} modes, system has {self.n_modes}")

    def analyze(self, values: np.ndarray, n: int) -> np.ndarray:
        """Quadrature inner products with the first ``n`` eigenfunctions."""
        self._check_count(n)
        shape = self.grid.shape
        f = np.asarray(values, dtype=float).reshape(shape)
        for d in range(self.grid.dim):
            w = self.grid.axis_weights[d]
            f = np.moveaxis(np.tensordot(self._factors[d] * w, f, axes=([1], [d])), 0, d)
        idx = self.indices[:n] - 1
        return f[tuple(idx.T)]

    def synthesize_values(self, coeffs: np.ndarray) -> np.ndarray:
        c = np.asarray(coeffs, dtype=float)
        self._check_count(c.size)
        kmax = tuple(fac.shape[0] for fac in self._factors)
        dense = np.zeros(kmax)
        idx = self.indices[: c.size] - 1
        dense[tuple(idx.T)] = c
        for d in range(self.grid.dim):
            dense = np.moveaxis(np.tensordot(self._factors[d].T, dense, axes=([1], [d])), 0, d)
        return dense.ravel()


@dataclass(frozen=True, eq=False)
class SpectralCoeffs:
    """Coefficients <g, phi_n>, n = 1..N, of a function in ``system``'s basis."""

    values: np.ndarray
    system: EigenSystem

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=float).ravel()
        if vals.size > self.system.n_modes:
            raise DimensionError(
                f"{vals.size} coefficients exceed the {self.system.n_modes} modes"
            )
        object.__setattr__(self, "values", vals)

    @property
    def N(self) -> int:
        return int(self.values.size)

    @property
    def lambdas(self) -> np.ndarray:
        return self.system.lambdas[: self.N]

    def truncate(self, n: int) -> "SpectralCoeffs":
        if not 1 <= n <= self.N:
            raise DimensionError(f"cannot truncate {self.N} coefficients to {n}")
        return SpectralCoeffs(self.values[:n].copy(), self.system)

    def padded(self, n: int) -> "SpectralCoeffs":
        """First ``n`` coefficients, zero-filled past ``N``."""
        out = np.zeros(n)
        m = min(n, self.N)
        out[:m] = self.values[:m]
        return SpectralCoeffs(out, self.system)

    def l2(self) -> float:
        return float(np.sqrt(np.sum(self.values**2)))


def laplacian_1d(n_modes: int, n_grid: int = 201) -> EigenSystem:
    """-d^2/dx^2 on (0, pi), Dirichlet: lambda_n = n^2."""
    if n_modes < 1:
        raise DomainError("n_modes must be >= 1")
    grid = uniform_grid(n_grid, 1)
    n = np.arange(1, n_modes + 1)
    return EigenSystem(
        indices=n[:, None],
        lambdas=(n**2).astype(float),
        grid=grid,
        domain="interval(0,pi)",
    )


def laplacian_2d(n_max: int, m_max: int, n_grid: int = 101) -> EigenSystem:
    """-Laplacian on (0, pi)^2, Dirichlet: lambda_nm = n^2 + m^2, sorted."""
    if n_max < 1 or m_max < 1:
        raise DomainError("n_max and m_max must be >= 1")
    grid = uniform_grid(n_grid, 2)
    nn, mm = np.meshgrid(np.arange(1, n_max + 1), np.arange(1, m_max + 1), indexing="ij")
    nn, mm = nn.ravel(), mm.ravel()
    lam = nn**2 + mm**2
    order = np.lexsort((mm, nn, lam))
    return EigenSystem(
        indices=np.stack([nn[order], mm[order]], axis=1),
        lambdas=lam[order].astype(float),
        grid=grid,
        domain="rectangle(0,pi)^2",
    )


def project(fld: GridField, system: EigenSystem, N: int) -> SpectralCoeffs:
    """Quadrature coefficients of ``fld`` on the first ``N`` modes."""
    if fld.grid is not system.grid and fld.grid.shape != system.grid.shape:
        raise DimensionError("field and eigensystem live on different grids")
    return SpectralCoeffs(system.analyze(fld.values, N), system)


def synthesize(coeffs: SpectralCoeffs) -> GridField:
    """sum_n c_n phi_n sampled on the system grid."""
    return GridField(coeffs.system.synthesize_values(coeffs.values), coeffs.system.grid)


def norm_p(coeffs: SpectralCoeffs, p: float) -> float:
    """(sum_n lambda_n^(2p) c_n^2)^(1/2)."""
    if p < 0:
        raise DomainError("p must be >= 0")
    return float(np.sqrt(np.sum(coeffs.lambdas ** (2.0 * p) * coeffs.values**2)))
