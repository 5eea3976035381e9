import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from backfrac.errors import DimensionError, DomainError
from backfrac.spectral import (
    GridField,
    SpectralCoeffs,
    laplacian_1d,
    laplacian_2d,
    norm_p,
    project,
    synthesize,
    uniform_grid,
)


@pytest.fixture(scope="module")
def sys1():
    return laplacian_1d(199, 201)


@pytest.fixture(scope="module")
def sys2():
    return laplacian_2d(99, 99, 101)


def test_grid_basics():
    g = uniform_grid(5, 2)
    assert g.shape == (5, 5) and g.n_nodes == 25 and g.dim == 2
    assert g.weights.sum() == pytest.approx(math.pi**2)
    assert g.interior.sum() == 9
    assert g.points[1].tolist() == [0.0, math.pi / 4]


def test_grid_too_small():
    with pytest.raises(DomainError):
        uniform_grid(2)


def test_orthonormal_1d(sys1):
    k = np.arange(sys1.n_modes)
    vals = np.stack([sys1.mode_values(i) for i in k[::7]])
    gram = (vals * sys1.grid.weights) @ vals.T
    np.testing.assert_allclose(gram, np.eye(len(vals)), atol=1e-13)


def test_eigenvalues_1d(sys1):
    np.testing.assert_array_equal(sys1.lambdas[:5], [1, 4, 9, 16, 25])


def test_eigen_order_2d(sys2):
    np.testing.assert_array_equal(sys2.lambdas[:6], [2, 5, 5, 8, 10, 10])
    assert sys2.indices[1].tolist() == [1, 2]
    assert sys2.indices[2].tolist() == [2, 1]
    assert np.all(np.diff(sys2.lambdas) >= 0)


def test_sine_projection_exact(sys1):
    u = GridField.from_function(lambda x: np.sin(x) + np.sin(2 * x) + np.sin(3 * x), sys1.grid)
    c = project(u, sys1, 10)
    expected = np.zeros(10)
    expected[:3] = math.sqrt(math.pi / 2)
    np.testing.assert_allclose(c.values, expected, atol=1e-13)


def test_triangle_coefficients(sys1):
    # <u0, phi_n> = 2 sqrt(2) / (n^2 sqrt(pi)) sin(n pi / 2); trapezoid error O(h^2)
    u = GridField.from_function(lambda x: np.where(x < np.pi / 2, x, np.pi - x), sys1.grid)
    c = project(u, sys1, 9)
    n = np.arange(1, 10)
    exact = 2 * math.sqrt(2) / (n**2 * math.sqrt(math.pi)) * np.sin(n * np.pi / 2)
    np.testing.assert_allclose(c.values, exact, atol=5e-5)


def test_roundtrip_2d_full(sys2):
    rng = np.random.default_rng(3)
    vals = np.zeros(sys2.grid.n_nodes)
    vals[sys2.grid.interior] = rng.standard_normal(int(sys2.grid.interior.sum()))
    back = synthesize(project(GridField(vals, sys2.grid), sys2, sys2.n_modes))
    np.testing.assert_allclose(back.values, vals, atol=1e-11)


def test_mode_2d_projection(sys2):
    u = GridField.from_function(lambda x, y: np.sin(x) * np.sin(y) + np.sin(2 * x) * np.sin(y), sys2.grid)
    c = project(u, sys2, 6)
    np.testing.assert_allclose(c.values, [math.pi / 2, 0, math.pi / 2, 0, 0, 0], atol=1e-13)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.floats(-10, 10), min_size=1, max_size=30))
def test_parseval(sys1, coeffs):
    c = SpectralCoeffs(np.array(coeffs), sys1)
    assert synthesize(c).norm() == pytest.approx(c.l2(), rel=1e-12, abs=1e-12)


def test_norm_p(sys1):
    c = SpectralCoeffs(np.array([1.0, 1.0, 1.0]), sys1)
    assert norm_p(c, 0) == pytest.approx(math.sqrt(3))
    assert norm_p(c, 1) == pytest.approx(math.sqrt(1 + 16 + 81))
    with pytest.raises(DomainError):
        norm_p(c, -1)


def test_coeff_helpers(sys1):
    c = SpectralCoeffs(np.arange(1.0, 6.0), sys1)
    assert c.truncate(2).values.tolist() == [1.0, 2.0]
    assert c.padded(7).values.tolist() == [1, 2, 3, 4, 5, 0, 0]
    np.testing.assert_array_equal(c.lambdas, [1, 4, 9, 16, 25])
    with pytest.raises(DimensionError):
        c.truncate(6)


def test_dimension_errors(sys1):
    with pytest.raises(DimensionError):
        GridField(np.zeros(10), sys1.grid)
    with pytest.raises(DimensionError):
        SpectralCoeffs(np.zeros(500), sys1)
    with pytest.raises(DimensionError):
        project(GridField(np.zeros(201), sys1.grid), sys1, 0)
    with pytest.raises(DimensionError):
        project(GridField(np.zeros(101), uniform_grid(101)), sys1, 3)
