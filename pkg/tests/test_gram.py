import math

import numpy as np
import pytest

from core.errors import DimensionMismatch, EmptyBasis, IndexOutOfRange, InvalidParameters
from core.matrix import as_matrix, hermitian_eigensystem
from engines.bounds import sur_bound
from engines.gram import (
    determinant_bound,
    gram_matrix,
    lbk_bound,
    optimize_phases,
    psd_order_check,
    quadratic_form_bound,
    report_phases,
    schmidt_orthogonalize,
    uncertainty_equality,
    v_matrix,
)
from engines.moments import generalized_brackets, variance
from experiments.sweeps import beta_state
from model.operators import Operator, matrix_units, pauli_operators
from model.sampling import Ensemble, sample_operator, sample_state
from model.states import pure_state


def _observables(seed, dim, n=3):
    return [sample_operator(seed + i, dim, Ensemble.HERMITIAN_GUE) for i in range(n)]


class TestGramMatrix:
    @pytest.mark.parametrize("seed", range(4))
    def test_is_hermitian_psd(self, seed):
        rho = sample_state(seed, 4)
        observables = _observables(10 * seed, 4)
        d = gram_matrix(rho, observables).d_matrix
        np.testing.assert_allclose(d, d.conj().T, atol=1e-14)
        assert hermitian_eigensystem(d).min >= -1e-10
        np.testing.assert_allclose(np.diag(d).real, [variance(rho, a) for a in observables], rtol=1e-12)

    def test_information_matrix_is_rank_one_and_dominated(self):
        rho = sample_state(3, 3)
        observables = _observables(40, 3)
        o = sample_operator(99, 3)
        d = gram_matrix(rho, observables).d_matrix
        v = v_matrix(rho, observables, o)
        values = hermitian_eigensystem(v).values
        assert np.all(np.abs(values[:-1]) < 1e-12)
        holds, min_eigenvalue = psd_order_check(d, v)
        assert holds and min_eigenvalue >= -1e-10

    def test_psd_order_shape_mismatch(self):
        with pytest.raises(DimensionMismatch):
            psd_order_check(as_matrix(np.eye(2)), as_matrix(np.eye(3)))

    def test_determinant_matches_schrodinger_slack(self, spin1):
        rho = sample_state(5, 3)
        jx, _, jz = spin1
        det = determinant_bound(rho, [jx, jz])
        assert det.lhs == pytest.approx(sur_bound(rho, jx, jz).slack, abs=1e-12)
        assert det.satisfied

    def test_quadratic_form_recovers_sum_form(self):
        rho = sample_state(6, 3)
        a, b = _observables(60, 3, 2)
        commutator_ev, _ = generalized_brackets(rho, a, b)
        report = quadratic_form_bound(rho, [a, b], [1, -1j])
        assert report.lhs == pytest.approx(variance(rho, a) + variance(rho, b))
        assert report.rhs == pytest.approx((1j * commutator_ev).real, abs=1e-12)
        assert report.satisfied


class TestSchmidt:
    @pytest.mark.parametrize(
        "rho, expected_r",
        [
            (pure_state([1, 2j, -1]), 3),
            (beta_state(0.4), 3),
            (sample_state(7, 3), 9),
            (sample_state(8, 2), 4),
        ],
    )
    def test_rank_is_d_times_rank_rho(self, rho, expected_r):
        theta = schmidt_orthogonalize(rho)
        assert theta.r == expected_r == rho.dim * rho.rank
        assert theta.source == "matrix_units"

    def test_rank_deficient_mixed_state(self, alpha_pi4):
        assert schmidt_orthogonalize(alpha_pi4).r == 6

    def test_pairwise_orthogonal(self):
        rho = sample_state(9, 3)
        theta = schmidt_orthogonalize(rho)
        ops = [o.matrix for o in theta.operators]
        for i in range(len(ops)):
            for j in range(i):
                overlap = np.trace(rho.rho @ ops[i].conj().T @ ops[j])
                assert abs(overlap) <= 1e-9 * math.sqrt(theta.norms[i] * theta.norms[j])
        assert all(n > 0 for n in theta.norms)

    def test_dependent_basis_is_dropped(self):
        sx, sy, sz = pauli_operators()
        theta = schmidt_orthogonalize(sample_state(1, 2), [sx, sx.scaled(2), sz])
        assert theta.r == 2
        assert theta.source == "custom"

    @pytest.mark.parametrize("scale", [1e-5, 1e-3, 1.0, 1e4])
    def test_small_norm_basis_is_kept(self, scale):
        e11 = matrix_units(2)[0].matrix
        theta = schmidt_orthogonalize(pure_state([1, 0]), [Operator(scale * e11, "E11")])
        assert theta.r == 1
        assert theta.norms[0] == pytest.approx(scale**2, rel=1e-12)

    def test_scaled_full_basis_keeps_rank(self):
        rho = sample_state(7, 3)
        basis = [u.scaled(1e-6) for u in matrix_units(3)]
        assert schmidt_orthogonalize(rho, basis).r == 9

    @pytest.mark.parametrize("eps", [1e-2, 1e-3])
    def test_nearly_dependent_basis_stays_orthogonal(self, eps):
        rho = sample_state(9, 3)
        a, c, b = _observables(40, 3)
        basis = [a, Operator(a.matrix + eps * c.matrix, "A+εC"), b]
        theta = schmidt_orthogonalize(rho, basis)
        assert theta.r == 3
        ops = [o.matrix for o in theta.operators]
        for i in range(len(ops)):
            for j in range(i):
                overlap = np.trace(rho.rho @ ops[i].conj().T @ ops[j])
                assert abs(overlap) <= 1e-9 * math.sqrt(theta.norms[i] * theta.norms[j])

    def test_empty_basis(self):
        with pytest.raises(EmptyBasis):
            schmidt_orthogonalize(sample_state(1, 2), [])


class TestUncertaintyEquality:
    @pytest.mark.parametrize("dim", [2, 3, 4])
    def test_closure(self, dim):
        rho = sample_state(dim, dim)
        observables = _observables(100 + dim, dim, 4)
        decomposition = uncertainty_equality(rho, observables, schmidt_orthogonalize(rho))
        assert decomposition.closed
        np.testing.assert_allclose(decomposition.partial_sum(len(decomposition.v_matrices)), decomposition.d_matrix, atol=1e-9)

    def test_closure_with_non_hermitian_observables(self):
        rho = sample_state(4, 3)
        observables = [sample_operator(s, 3) for s in (1, 2)]
        assert uncertainty_equality(rho, observables, schmidt_orthogonalize(rho)).closed

    def test_partial_sums_are_dominated(self):
        rho = pure_state([1, 1j, 0.3])
        observables = _observables(7, 3)
        decomposition = uncertainty_equality(rho, observables, schmidt_orthogonalize(rho))
        for k in range(len(decomposition.v_matrices) + 1):
            holds, _ = psd_order_check(decomposition.d_matrix, decomposition.partial_sum(k))
            assert holds

    def test_theta_from_another_state(self):
        theta = schmidt_orthogonalize(sample_state(1, 3))
        with pytest.raises(InvalidParameters):
            uncertainty_equality(sample_state(2, 3), _observables(0, 3), theta)


class TestLowerBoundsK:
    def test_full_set_is_equality_for_any_phase(self, spin1):
        rho = beta_state(0.3)
        theta = schmidt_orthogonalize(rho)
        report = lbk_bound(rho, list(spin1), theta, theta.r, phases=[0.0, 1.1, -2.0])
        assert report.rhs == pytest.approx(report.lhs, abs=1e-10)

    @pytest.mark.parametrize("beta", [math.pi / 8, 0.9, 2.5])
    def test_monotone_in_k_with_warm_start(self, spin1, beta):
        rho = beta_state(beta)
        theta = schmidt_orthogonalize(rho)
        values, warm = [], None
        for k in range(theta.r + 1):
            report = lbk_bound(rho, list(spin1), theta, k, restarts=4, seed=1, initial_phases=warm)
            values.append(report.rhs)
            warm = report_phases(report)
        assert all(a <= b + 1e-12 for a, b in zip(values, values[1:]))
        assert values[-1] == pytest.approx(1 + math.sin(2 * beta) ** 2, abs=1e-8)

    @pytest.mark.parametrize("phases", [[0.0, 0.0, 0.0], [0.0, 0.7, -1.3], [0.0, 2.9, 1.1]])
    def test_monotone_in_k_at_fixed_phases(self, spin1, phases):
        rho = sample_state(12, 3)
        theta = schmidt_orthogonalize(rho)
        reports = [lbk_bound(rho, list(spin1), theta, k, phases=phases) for k in range(theta.r + 1)]
        values = [report.rhs for report in reports]
        assert all(a <= b + 1e-12 for a, b in zip(values, values[1:]))
        assert values[-1] == pytest.approx(reports[-1].lhs, abs=1e-9)

    @pytest.mark.parametrize("beta", [math.pi / 4, 3 * math.pi / 4])
    def test_lb0_vanishes_at_quarter_turns(self, spin1, beta):
        rho = beta_state(beta)
        theta = schmidt_orthogonalize(rho)
        assert lbk_bound(rho, list(spin1), theta, 0).rhs == pytest.approx(0.0, abs=1e-8)

    def test_phase_gauge(self, spin1, beta_pi8):
        theta = schmidt_orthogonalize(beta_pi8)
        report = lbk_bound(beta_pi8, list(spin1), theta, 1)
        assert report.components["theta_1"] == pytest.approx(0.0, abs=1e-15)
        assert len(report_phases(report)) == 3

    def test_k_out_of_range(self, spin1, beta_pi8):
        theta = schmidt_orthogonalize(beta_pi8)
        with pytest.raises(IndexOutOfRange):
            lbk_bound(beta_pi8, list(spin1), theta, theta.r + 1)

    def test_wrong_number_of_phases(self, spin1, beta_pi8):
        theta = schmidt_orthogonalize(beta_pi8)
        with pytest.raises(InvalidParameters):
            lbk_bound(beta_pi8, list(spin1), theta, 1, phases=[0.0, 1.0])


def test_optimize_phases_on_two_by_two():
    m = as_matrix([[1.0, 2 - 1j], [2 + 1j, -0.5]])
    phases, value = optimize_phases(m, restarts=3, seed=0)
    assert value == pytest.approx(0.5 + 2 * abs(2 - 1j))
    assert phases[0] == 0.0


def test_matrix_units_give_full_basis_for_full_rank_state():
    rho = sample_state(17, 2)
    theta = schmidt_orthogonalize(rho, matrix_units(2))
    assert theta.r == 4


def test_hand_worked_qubit_example():
    rho = pure_state([1, 0])
    sx, sy, _ = pauli_operators()
    theta = schmidt_orthogonalize(rho)
    assert theta.r == 2
    assert [o.label for o in theta.operators] == ["O1[E11]", "O2[E21]"]
    decomposition = uncertainty_equality(rho, [sx, sy], theta)
    np.testing.assert_allclose(decomposition.d_matrix, [[1, 1j], [-1j, 1]], atol=1e-12)
    np.testing.assert_allclose(decomposition.v_matrices[0], 0, atol=1e-12)
    np.testing.assert_allclose(decomposition.v_matrices[1], decomposition.d_matrix, atol=1e-12)


def test_serialization(beta_pi8, spin1):
    theta = schmidt_orthogonalize(beta_pi8)
    payload = theta.to_dict()
    assert payload["r"] == 3 and len(payload["operators"]) == 3
    assert payload["operators"][0]["rows"] == 3
    decomposition = uncertainty_equality(beta_pi8, list(spin1), theta).to_dict()
    assert decomposition["closed"] is True
    assert len(decomposition["v_matrices"]) == 3
