import numpy as np
import pytest

from core.errors import InvalidSpec
from core.matrix import hermitian_eigensystem, hermiticity_residual
from model.operators import Operator
from model.sampling import (
    MASK64,
    Ensemble,
    RandomSpec,
    sample,
    sample_operator,
    sample_state,
    substream_seed,
)
from model.states import DensityState


def test_same_spec_same_bits():
    spec = RandomSpec(42, 4, Ensemble.HS_MIXED)
    np.testing.assert_array_equal(sample(spec).rho, sample(spec).rho)


def test_substreams_are_independent():
    a = sample_operator(substream_seed(7, 0), 3)
    b = sample_operator(substream_seed(7, 1), 3)
    assert not np.allclose(a.matrix, b.matrix)


def test_substream_seed_formula():
    assert substream_seed(0, 0) == 0x9E3779B97F4A7C15
    assert substream_seed(1, 1) == (1 ^ (2 * 0x9E3779B97F4A7C15)) & MASK64
    assert 0 <= substream_seed(MASK64, 10) <= MASK64


def test_trial_spec():
    spec = RandomSpec(3, 2, Ensemble.HAAR_PURE)
    assert spec.trial(4).seed == substream_seed(3, 4)
    assert spec.trial(4).dim == 2


@pytest.mark.parametrize("dim", [2, 5])
def test_ensembles(dim):
    pure = sample(RandomSpec(1, dim, Ensemble.HAAR_PURE))
    assert isinstance(pure, DensityState) and pure.purity_flag
    mixed = sample_state(1, dim)
    assert mixed.rank == dim
    np.testing.assert_allclose(np.trace(mixed.rho), 1.0, atol=1e-12)
    gue = sample_operator(1, dim, Ensemble.HERMITIAN_GUE)
    assert isinstance(gue, Operator) and gue.hermitian
    assert not sample_operator(1, dim).hermitian


@pytest.mark.parametrize(
    "spec",
    [RandomSpec(-1, 3, Ensemble.HS_MIXED), RandomSpec(1, 1, Ensemble.HS_MIXED), RandomSpec(1, 3, "wishart")],
)
def test_invalid_spec(spec):
    with pytest.raises(InvalidSpec):
        sample(spec)


@pytest.mark.parametrize("dim", [2, 3, 4, 5, 6])
def test_hs_mixed_states_are_valid(dim):
    for seed in range(200):
        rho = sample(RandomSpec(seed, dim, Ensemble.HS_MIXED)).rho
        assert hermiticity_residual(rho) <= 1e-12
        assert hermitian_eigensystem(rho).min >= -1e-12
        assert abs(np.trace(rho) - 1.0) <= 1e-12


@pytest.mark.slow
@pytest.mark.parametrize("dim", [2, 3, 4, 5, 6])
def test_hs_mixed_states_are_valid_at_scale(dim):
    for seed in range(10_000):
        rho = sample(RandomSpec(seed, dim, Ensemble.HS_MIXED)).rho
        assert hermitian_eigensystem(rho).min >= -1e-12
        assert abs(np.trace(rho) - 1.0) <= 1e-12
