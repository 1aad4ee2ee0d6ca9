import numpy as np
import pytest

from core.errors import InvalidCutoff, InvalidSpin, NotSquare
from model.operators import (
    Operator,
    boson_annihilator,
    ladder_operators,
    load_operator,
    matrix_units,
    outer,
    pauli_operators,
    spin_operators,
    tensor_product,
)


@pytest.mark.parametrize("two_j", [1, 2, 3, 4])
def test_spin_commutation_and_casimir(two_j):
    jx, jy, jz = spin_operators(two_j)
    j = two_j / 2
    x, y, z = jx.matrix, jy.matrix, jz.matrix
    np.testing.assert_allclose(x @ y - y @ x, 1j * z, atol=1e-12)
    np.testing.assert_allclose(y @ z - z @ y, 1j * x, atol=1e-12)
    casimir = x @ x + y @ y + z @ z
    np.testing.assert_allclose(casimir, j * (j + 1) * np.eye(two_j + 1), atol=1e-12)
    assert jx.hermitian and jy.hermitian and jz.hermitian


def test_spin1_matrices(spin1):
    jx, _, jz = spin1
    s = 1 / np.sqrt(2)
    np.testing.assert_allclose(jx.matrix, [[0, s, 0], [s, 0, s], [0, s, 0]], atol=1e-15)
    np.testing.assert_allclose(jz.matrix, np.diag([1, 0, -1]))


@pytest.mark.parametrize("two_j", [0, -1])
def test_invalid_spin(two_j):
    with pytest.raises(InvalidSpin):
        spin_operators(two_j)


def test_pauli_and_ladder():
    sx, sy, sz = pauli_operators()
    np.testing.assert_allclose(sx.matrix @ sy.matrix, 1j * sz.matrix)
    sp, sm = ladder_operators()
    assert not sp.hermitian
    np.testing.assert_allclose(sp.dagger().matrix, sm.matrix)
    np.testing.assert_allclose(sp.matrix @ sm.matrix - sm.matrix @ sp.matrix, sz.matrix)


def test_boson_truncation():
    a = boson_annihilator(4).matrix
    commutator = a @ a.conj().T - a.conj().T @ a
    np.testing.assert_allclose(np.diag(commutator).real, [1, 1, 1, -3], atol=1e-12)
    with pytest.raises(InvalidCutoff):
        boson_annihilator(1)


def test_tensor_product_block_order():
    sp, _ = ladder_operators()
    eye = Operator(np.eye(2))
    left = tensor_product(sp, eye).matrix
    assert left[0, 2] == 1 and left[1, 3] == 1


def test_matrix_units_span():
    units = matrix_units(3)
    assert len(units) == 9
    assert units[5].label == "E23"
    total = sum(u.matrix for u in units)
    np.testing.assert_array_equal(total, np.ones((3, 3)))


def test_operator_algebra_and_labels():
    sx, _, sz = pauli_operators()
    assert (sx + sz).label == "σx+σz"
    assert (sx @ sz).label == "σxσz"
    np.testing.assert_allclose((sx - sx).matrix, 0)
    assert sx.scaled(2j).matrix[0, 1] == 2j
    ket = outer([1, 0], [0, 1])
    np.testing.assert_array_equal(ket.matrix, [[0, 1], [0, 0]])


def test_operator_requires_square():
    with pytest.raises(NotSquare):
        Operator(np.ones((2, 3)))


def test_load_operator_uses_file_stem(fixtures_dir):
    op = load_operator(fixtures_dir / "sigma_plus.json")
    assert op.label == "sigma_plus"
    np.testing.assert_array_equal(op.matrix, ladder_operators()[0].matrix)


def test_tensor_product_is_associative():
    a = Operator(np.array([[1, 2], [3, 4]]))
    b = Operator(np.array([[0, -1], [5, 2]]))
    c = Operator(np.array([[2, 0, 1], [1, 1, 0], [0, 3, -2]]))
    left = tensor_product(tensor_product(a, b), c).matrix
    right = tensor_product(a, tensor_product(b, c)).matrix
    np.testing.assert_array_equal(left, right)
