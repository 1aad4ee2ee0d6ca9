import numpy as np
import pytest

from core.errors import FixtureNotFound, InvalidState, MatrixParseError, ZeroVector
from model.states import density_state, diagonal_state, load_state, pure_state, state_vector


def test_pure_state_is_normalized():
    state = pure_state([3, 4j])
    np.testing.assert_allclose(np.trace(state.rho), 1.0)
    assert state.rank == 1 and state.purity_flag
    assert state.describe() == "pure state, d=2, rank=1"


def test_pure_state_errors():
    with pytest.raises(ZeroVector):
        pure_state([0, 0, 0])
    with pytest.raises(InvalidState):
        pure_state([1])


def test_diagonal_state_rank():
    state = diagonal_state([0.5, 0.0, 0.5])
    assert state.dim == 3
    assert state.rank == 2
    assert not state.purity_flag


@pytest.mark.parametrize(
    "rho, invariant",
    [
        ([[0.5, 0.1], [0.2, 0.5]], "厄米"),
        ([[1.5, 0.0], [0.0, -0.5]], "半正定"),
        ([[0.5, 0.0], [0.0, 0.25]], "單位跡"),
        ([[1.0, 0.0, 0.0], [0.0, 0.0, 0.0]], "方陣"),
    ],
)
def test_density_state_names_the_violated_invariant(rho, invariant):
    with pytest.raises(InvalidState, match=invariant):
        density_state(np.array(rho))


def test_state_vector_recovers_amplitudes():
    psi = np.array([1, 1j, 0]) / np.sqrt(2)
    vec = state_vector(pure_state(psi))
    assert abs(abs(np.vdot(vec, psi)) - 1) < 1e-12
    with pytest.raises(InvalidState):
        state_vector(diagonal_state([0.5, 0.5]))


def test_load_state(fixtures_dir):
    state = load_state(fixtures_dir / "spin1_state_alpha_pi4.json")
    np.testing.assert_allclose(np.diag(state.rho).real, [0.5, 0.0, 0.5])


def test_load_state_errors(fixtures_dir):
    with pytest.raises(InvalidState):
        load_state(fixtures_dir / "not_a_state.json")
    with pytest.raises(MatrixParseError):
        load_state(fixtures_dir / "corrupt_state.json")
    with pytest.raises(FixtureNotFound):
        load_state(fixtures_dir / "missing.json")
