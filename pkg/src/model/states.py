"""
量子態模組
負責密度矩陣的驗證、純態建構與 JSON 檔案載入
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from core.codec import read_matrix
from core.errors import InvalidState, ZeroVector
from core.matrix import (
    HERMITIAN_TOL,
    RANK_TOL,
    ComplexMatrix,
    as_matrix,
    hermitian_eigensystem,
    hermiticity_residual,
    rank_with_tolerance,
    trace,
)


@dataclass(frozen=True)
class DensityState:
    """已驗證的密度矩陣 ρ（厄米、半正定、跡為一）"""

    rho: ComplexMatrix
    dim: int
    rank: int
    purity_flag: bool

    def describe(self) -> str:
        kind = "pure" if self.purity_flag else "mixed"
        return f"{kind} state, d={self.dim}, rank={self.rank}"


def density_state(
    rho: ComplexMatrix, tol: float = HERMITIAN_TOL, rank_tol: float = RANK_TOL
) -> DensityState:
    """
    驗證並包裝密度矩陣。

    Args:
        rho: d×d 複數矩陣
        tol: 厄米、半正定與跡的容差
        rank_tol: 判定秩（與是否為純態）的相對容差

    Returns:
        DensityState: 通過三項不變量的量子態

    Raises:
        InvalidState: 錯誤訊息會指出違反的不變量
    """
    rho = as_matrix(rho)
    if rho.shape[0] != rho.shape[1]:
        raise InvalidState(f"密度矩陣必須是方陣，收到形狀 {rho.shape}")
    dim = rho.shape[0]
    residual = hermiticity_residual(rho)
    if residual > tol:
        raise InvalidState(f"違反厄米性: 相對殘差 {residual:.3e} > {tol:.1e}")
    min_eigenvalue = hermitian_eigensystem(rho, tol).min
    if min_eigenvalue < -tol:
        raise InvalidState(f"違反半正定性: 最小特徵值 {min_eigenvalue:.3e} < {-tol:.1e}")
    tr = trace(rho)
    if abs(tr - 1.0) > tol:
        raise InvalidState(f"違反單位跡: Tr(ρ) = {tr.real:.12g}")
    rank = rank_with_tolerance(rho, rank_tol)
    return DensityState(rho=rho, dim=dim, rank=rank, purity_flag=rank == 1)


def pure_state(amplitudes: Sequence[complex]) -> DensityState:
    """由振幅向量建構 ρ = |ψ⟩⟨ψ| / ⟨ψ|ψ⟩"""
    psi = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
    if psi.size < 2:
        raise InvalidState(f"純態的維度必須至少為 2，收到 {psi.size}")
    norm = float(np.linalg.norm(psi))
    if norm == 0.0:
        raise ZeroVector("振幅向量的範數為零")
    psi = psi / norm
    rho = as_matrix(np.outer(psi, psi.conj()))
    return DensityState(rho=rho, dim=psi.size, rank=1, purity_flag=True)


def diagonal_state(populations: Sequence[float]) -> DensityState:
    """計算基底中的對角混合態，例如 diag(cos²α, 0, sin²α)"""
    return density_state(np.diag(np.asarray(populations, dtype=np.float64)))


def state_vector(state: DensityState) -> np.ndarray:
    """取出純態的歸一化向量（整體相位不定）"""
    if not state.purity_flag:
        raise InvalidState("只有純態才有態向量")
    eig = hermitian_eigensystem(state.rho)
    return np.asarray(eig.vectors[:, -1])


def load_state(path: Path, tol: float = HERMITIAN_TOL, rank_tol: float = RANK_TOL) -> DensityState:
    """從 JSON 矩陣檔案載入並驗證密度矩陣"""
    rho = read_matrix(path)
    try:
        return density_state(rho, tol, rank_tol)
    except InvalidState as e:
        raise InvalidState(f"{path}: {e}") from e
