"""
稠密複數矩陣基礎模組
負責矩陣乘法、共軛轉置、跡、厄米特徵分解與帶容差的秩
"""

from dataclasses import dataclass
from typing import Any

import numpy as np
import numpy.typing as npt

from core.errors import DimensionMismatch, InvalidParameters, NotHermitian, NotSquare

ComplexMatrix = npt.NDArray[np.complex128]

HERMITIAN_TOL = 1e-10
RANK_TOL = 1e-9


def as_matrix(data: Any) -> ComplexMatrix:
    """
    將輸入轉為唯讀的 complex128 二維陣列。

    Raises:
        DimensionMismatch: 輸入不是二維或為空
        InvalidParameters: 含有 NaN 或 Inf
    """
    m = np.array(data, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise DimensionMismatch(f"需要非空的二維矩陣，收到形狀 {m.shape}")
    if not np.all(np.isfinite(m)):
        raise InvalidParameters("矩陣含有非有限值 (NaN/Inf)")
    m.setflags(write=False)
    return m


def identity(dim: int) -> ComplexMatrix:
    return as_matrix(np.eye(dim))


def mat_mul(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"無法相乘: {a.shape} × {b.shape}")
    return as_matrix(a @ b)


def adjoint(m: ComplexMatrix) -> ComplexMatrix:
    return as_matrix(m.conj().T)


def require_square(m: ComplexMatrix) -> int:
    if m.shape[0] != m.shape[1]:
        raise NotSquare(f"需要方陣，收到形狀 {m.shape}")
    return m.shape[0]


def trace(m: ComplexMatrix) -> complex:
    require_square(m)
    return complex(np.trace(m))


def frobenius_norm(m: ComplexMatrix) -> float:
    return float(np.linalg.norm(m, "fro"))


def hermiticity_residual(m: ComplexMatrix) -> float:
    """相對厄米殘差 ‖M − M†‖_F / max(1, ‖M‖_F)"""
    require_square(m)
    return frobenius_norm(m - m.conj().T) / max(1.0, frobenius_norm(m))


def is_hermitian(m: ComplexMatrix, tol: float = HERMITIAN_TOL) -> bool:
    return m.shape[0] == m.shape[1] and hermiticity_residual(m) <= tol


@dataclass(frozen=True)
class EigenSystem:
    """厄米矩陣的特徵系統，特徵值遞增，vectors 的各行為正交歸一特徵向量"""

    values: npt.NDArray[np.float64]
    vectors: ComplexMatrix

    @property
    def min(self) -> float:
        return float(self.values[0])

    @property
    def max(self) -> float:
        return float(self.values[-1])


def hermitian_eigensystem(h: ComplexMatrix, tol: float = HERMITIAN_TOL) -> EigenSystem:
    """
    計算厄米矩陣的特徵系統。

    先對稱化 (H + H†)/2 再交給 LAPACK，使輸出在容差內仍嚴格厄米。

    Args:
        h: 待分解的方陣
        tol: 相對厄米容差

    Returns:
        EigenSystem: 遞增排列的實特徵值與對應的特徵向量

    Raises:
        NotHermitian: ‖h − h†‖_F > tol · max(1, ‖h‖_F)
    """
    residual = hermiticity_residual(h)
    if residual > tol:
        raise NotHermitian(f"矩陣不是厄米矩陣 (相對殘差 {residual:.3e} > {tol:.1e})")
    values, vectors = np.linalg.eigh((h + h.conj().T) / 2)
    values = np.asarray(values, dtype=np.float64)
    values.setflags(write=False)
    return EigenSystem(values=values, vectors=as_matrix(vectors))


def rank_with_tolerance(g: ComplexMatrix, tol: float = RANK_TOL) -> int:
    """特徵值大於 tol · max(1, 最大特徵值) 的個數"""
    eig = hermitian_eigensystem(g)
    threshold = tol * max(1.0, eig.max)
    return int(np.count_nonzero(eig.values > threshold))
