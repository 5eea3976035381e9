import math

import numpy as np
import pytest

from backfrac.errors import DimensionError, DomainError
from backfrac.forward import ProblemSpec, decay_factors, forward_solve
from backfrac.spectral import GridField, SpectralCoeffs, laplacian_1d, synthesize
from oracles import ml_half_one


@pytest.fixture(scope="module")
def system():
    return laplacian_1d(199, 201)


def _example1(system, gamma=0.5):
    c = np.zeros(3) + math.sqrt(math.pi / 2)
    return ProblemSpec(gamma, 1.0, system, SpectralCoeffs(c, system))


def test_closed_form_half_order(system):
    out = forward_solve(_example1(system), 0.25, 3)
    # E_{1/2}(-n^2 t^{1/2}) with t^{1/2} = 0.5
    expected = [math.sqrt(math.pi / 2) * ml_half_one(n * n * 0.5) for n in (1, 2, 3)]
    np.testing.assert_allclose(out.values, expected, rtol=1e-13)


def test_t_zero_returns_initial(system):
    spec = _example1(system)
    np.testing.assert_array_equal(forward_solve(spec, 0.0, 5).values[:3], spec.u0.values)


def test_grid_and_coeff_inputs_agree(system):
    u0 = GridField.from_function(lambda x: np.sin(x) + np.sin(2 * x) + np.sin(3 * x), system.grid)
    a = forward_solve(ProblemSpec(0.5, 1.0, system, u0), 1.0, 10)
    b = forward_solve(_example1(system), 1.0, 10)
    np.testing.assert_allclose(a.values, b.values, atol=1e-13)


def test_decay_monotone_in_mode_and_time(system):
    d1 = decay_factors(system.lambdas[:20], 0.7, 0.5)
    d2 = decay_factors(system.lambdas[:20], 0.7, 1.0)
    assert np.all(np.diff(d1) < 0)
    assert np.all(d2 < d1)
    assert np.all((d2 > 0) & (d1 <= 1))


def test_forward_contracts_norm(system):
    spec = _example1(system, 0.3)
    norms = [synthesize(forward_solve(spec, t, 3)).norm() for t in (0.0, 0.2, 0.6, 1.0)]
    assert all(a > b for a, b in zip(norms, norms[1:]))


@pytest.mark.parametrize(
    "make",
    [lambda s: ProblemSpec(1.0, 1.0, s, SpectralCoeffs(np.ones(1), s)),
     lambda s: ProblemSpec(0.5, 0.0, s, SpectralCoeffs(np.ones(1), s)),
     lambda s: forward_solve(_example1(s), 1.5, 3)],
)
def test_domain_errors(system, make):
    with pytest.raises(DomainError):
        make(system)


def test_mode_count_errors(system):
    with pytest.raises(DimensionError):
        forward_solve(_example1(system), 0.5, 0)
    with pytest.raises(DimensionError):
        forward_solve(_example1(system), 0.5, 500)
