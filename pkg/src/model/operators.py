"""
算符模組
提供算符包裝，以及常用的具體系統：自旋 j、單量子位元升降算符、截斷玻色模、矩陣單位基底
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Sequence, Tuple

import numpy as np

from core.codec import read_matrix
from core.errors import InvalidCutoff, InvalidSpin
from core.matrix import HERMITIAN_TOL, ComplexMatrix, as_matrix, is_hermitian, require_square

DEFAULT_CUTOFF = 8


@dataclass(frozen=True)
class Operator:
    """方陣算符；hermitian 於建構時依 1e-10 相對容差計算"""

    matrix: ComplexMatrix
    label: str = ""
    hermitian: bool = field(init=False)

    def __post_init__(self) -> None:
        matrix = as_matrix(self.matrix)
        require_square(matrix)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "hermitian", is_hermitian(matrix, HERMITIAN_TOL))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def dagger(self) -> "Operator":
        return Operator(self.matrix.conj().T, f"{self.label}†" if self.label else "")

    def scaled(self, factor: complex) -> "Operator":
        return Operator(factor * self.matrix, self.label)

    def __add__(self, other: "Operator") -> "Operator":
        return Operator(self.matrix + other.matrix, _join(self.label, "+", other.label))

    def __sub__(self, other: "Operator") -> "Operator":
        return Operator(self.matrix - other.matrix, _join(self.label, "-", other.label))

    def __matmul__(self, other: "Operator") -> "Operator":
        return Operator(self.matrix @ other.matrix, _join(self.label, "", other.label))


def _join(left: str, op: str, right: str) -> str:
    return f"{left}{op}{right}" if left and right else ""


def identity_operator(dim: int) -> Operator:
    return Operator(np.eye(dim), "I")


def zero_operator(dim: int) -> Operator:
    return Operator(np.zeros((dim, dim)), "0")


def spin_operators(two_j: int) -> Tuple[Operator, Operator, Operator]:
    """
    建構 ħ = 1 的角動量矩陣 (Jx, Jy, Jz)。

    基底為 J_z 本徵態，依 m = j, j−1, ..., −j 排列（|j⟩ 在第一列）。

    Args:
        two_j: 2j，維度 d = two_j + 1

    Raises:
        InvalidSpin: two_j < 1
    """
    if not isinstance(two_j, (int, np.integer)) or two_j < 1:
        raise InvalidSpin(f"two_j 必須是正整數，收到 {two_j}")
    j = two_j / 2
    m = j - np.arange(two_j + 1)
    # ⟨m+1|J+|m⟩ = √(j(j+1) − m(m+1))，位於上對角線
    j_plus = np.diag(np.sqrt(j * (j + 1) - m[1:] * (m[1:] + 1)), k=1).astype(np.complex128)
    j_minus = j_plus.conj().T
    jx = Operator((j_plus + j_minus) / 2, "Jx")
    jy = Operator((j_plus - j_minus) / 2j, "Jy")
    jz = Operator(np.diag(m), "Jz")
    return jx, jy, jz


def pauli_operators() -> Tuple[Operator, Operator, Operator]:
    """σx, σy, σz，基底順序 (|0⟩, |1⟩)，σz|0⟩ = |0⟩"""
    sx = Operator([[0, 1], [1, 0]], "σx")
    sy = Operator([[0, -1j], [1j, 0]], "σy")
    sz = Operator([[1, 0], [0, -1]], "σz")
    return sx, sy, sz


def ladder_operators() -> Tuple[Operator, Operator]:
    """單量子位元的 σ+ = |e⟩⟨g| 與 σ− = |g⟩⟨e|，基底順序 (e, g)"""
    sigma_plus = Operator([[0, 1], [0, 0]], "σ+")
    sigma_minus = Operator([[0, 0], [1, 0]], "σ−")
    return sigma_plus, sigma_minus


def boson_annihilator(cutoff: int = DEFAULT_CUTOFF) -> Operator:
    """
    截斷於 Fock 能階 0..cutoff−1 的湮滅算符，a|n⟩ = √n |n−1⟩。

    截斷後 [a, a†] = I 只在 n < cutoff−1 的子空間成立，最高能階上為 1 − cutoff。
    """
    if not isinstance(cutoff, (int, np.integer)) or cutoff < 2:
        raise InvalidCutoff(f"cutoff 必須至少為 2，收到 {cutoff}")
    return Operator(np.diag(np.sqrt(np.arange(1, cutoff)), k=1), "a")


def tensor_product(a: Operator, b: Operator) -> Operator:
    """Kronecker 積，左因子為外層區塊"""
    return Operator(np.kron(a.matrix, b.matrix), _join(a.label, "⊗", b.label))


def matrix_units(dim: int) -> List[Operator]:
    """d² 個矩陣單位 E_ij = |i⟩⟨j|，依列優先排列"""
    units = []
    for i in range(dim):
        for j in range(dim):
            e = np.zeros((dim, dim), dtype=np.complex128)
            e[i, j] = 1.0
            units.append(Operator(e, f"E{i + 1}{j + 1}"))
    return units


def outer(ket: Sequence[complex], bra: Sequence[complex], label: str = "") -> Operator:
    """|ket⟩⟨bra|"""
    ket = np.asarray(ket, dtype=np.complex128).reshape(-1)
    bra = np.asarray(bra, dtype=np.complex128).reshape(-1)
    return Operator(np.outer(ket, bra.conj()), label)


def load_operator(path: Path, label: str = "") -> Operator:
    return Operator(read_matrix(path), label or Path(path).stem)
