import numpy as np
import pytest

from core.errors import DimensionMismatch, NumericalInconsistency
from core.matrix import hermiticity_residual
from engines.moments import (
    _real,
    checked,
    expectation,
    form,
    generalized_brackets,
    moments,
    ordinary_brackets,
    second_origin_moment,
    variance,
)
from model.operators import ladder_operators, pauli_operators
from model.sampling import Ensemble, sample_operator, sample_state
from model.states import pure_state

PLUS = pure_state([1, 1])


def test_expectation_and_variance_on_plus():
    sx, sy, sz = pauli_operators()
    assert expectation(PLUS, sx) == pytest.approx(1.0)
    assert variance(PLUS, sx) == pytest.approx(0.0, abs=1e-15)
    assert variance(PLUS, sz) == pytest.approx(1.0)
    report = moments(PLUS, sy)
    assert report.second_origin_moment == pytest.approx(1.0)
    assert report.variance == pytest.approx(1.0)


def test_checked_operator_has_zero_mean():
    rho = sample_state(11, 4)
    q = sample_operator(12, 4)
    assert abs(expectation(rho, checked(rho, q))) < 1e-12


def test_variance_identity_for_nonhermitian():
    rho = sample_state(5, 3)
    q = sample_operator(6, 3)
    expected = second_origin_moment(rho, q) - abs(expectation(rho, q)) ** 2
    assert variance(rho, q) == pytest.approx(expected, rel=1e-10)


def test_form_is_sesquilinear():
    rho = sample_state(1, 3)
    a, b = sample_operator(2, 3), sample_operator(3, 3)
    assert form(rho, a, b) == pytest.approx(form(rho, b, a).conjugate())
    np.testing.assert_allclose(form(rho, a, b), np.trace(rho.rho @ a.matrix.conj().T @ b.matrix))


def test_generalized_brackets_sum_to_twice_the_form():
    rho = sample_state(8, 3)
    a, b = sample_operator(9, 3), sample_operator(10, 3)
    commutator_ev, anticommutator_ev = generalized_brackets(rho, a, b)
    assert commutator_ev + anticommutator_ev == pytest.approx(2 * form(rho, a, b))
    assert abs(commutator_ev.real) < 1e-12
    assert abs(anticommutator_ev.imag) < 1e-12


def test_brackets_agree_for_hermitian_operators():
    rho = sample_state(21, 4)
    a = sample_operator(22, 4, Ensemble.HERMITIAN_GUE)
    b = sample_operator(23, 4, Ensemble.HERMITIAN_GUE)
    np.testing.assert_allclose(generalized_brackets(rho, a, b), ordinary_brackets(rho, a, b), atol=1e-12)


def test_brackets_differ_for_ladder_operators():
    sp, sm = ladder_operators()
    rho = pure_state([1, 0])
    generalized = generalized_brackets(rho, sp, sm)
    ordinary = ordinary_brackets(rho, sp, sm)
    assert generalized[0] == pytest.approx(0.0)
    assert ordinary[0] == pytest.approx(1.0)


def test_imaginary_leak_is_an_error():
    with pytest.raises(NumericalInconsistency):
        _real(1.0 + 1e-6j, "test")


def test_dimension_mismatch():
    sx, _, _ = pauli_operators()
    with pytest.raises(DimensionMismatch):
        expectation(sample_state(0, 3), sx)


@pytest.mark.parametrize("dim", [2, 3, 5])
def test_form_satisfies_cauchy_schwarz(dim):
    for seed in range(50):
        rho = sample_state(seed, dim)
        a, b = sample_operator(1000 + seed, dim), sample_operator(2000 + seed, dim)
        assert abs(form(rho, a, b)) ** 2 <= form(rho, a, a).real * form(rho, b, b).real + 1e-10


@pytest.mark.parametrize("seed", range(10))
def test_bracket_operators_are_hermitian(seed):
    a, b = sample_operator(seed, 4).matrix, sample_operator(seed + 100, 4).matrix
    ad, bd = a.conj().T, b.conj().T
    for m in (ad @ a, bd @ b, 1j * (ad @ b - bd @ a), ad @ b + bd @ a):
        assert hermiticity_residual(m) <= 1e-12
