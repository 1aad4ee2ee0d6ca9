"""
隨機系綜抽樣模組

每次抽樣都由完整的 RandomSpec（含種子）決定，平行試驗之間不共享任何產生器狀態。
第 k 次試驗使用子流種子 seed ⊕ (k+1)·0x9E3779B97F4A7C15 (mod 2⁶⁴)。
"""

from dataclasses import dataclass, replace
from enum import Enum
from typing import Union

import numpy as np

from core.errors import InvalidSpec
from model.operators import Operator
from model.states import DensityState, density_state, pure_state

GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MASK64 = (1 << 64) - 1


class Ensemble(str, Enum):
    HAAR_PURE = "haar_pure"
    HS_MIXED = "hs_mixed"
    GINIBRE_OPERATOR = "ginibre_operator"
    HERMITIAN_GUE = "hermitian_gue"


@dataclass(frozen=True)
class RandomSpec:
    seed: int
    dim: int
    ensemble: Ensemble

    def trial(self, k: int) -> "RandomSpec":
        """第 k 次試驗的子流規格"""
        return replace(self, seed=substream_seed(self.seed, k))


def substream_seed(seed: int, k: int) -> int:
    return (seed ^ ((k + 1) * GOLDEN_GAMMA)) & MASK64


def _complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def sample(spec: RandomSpec) -> Union[DensityState, Operator]:
    """
    依規格抽取一個隨機態或算符。

    - haar_pure: 歸一化複高斯向量的純態
    - hs_mixed: ρ = GG†/Tr(GG†)，G 為方形複高斯矩陣
    - ginibre_operator: 未歸一化的方形複高斯矩陣
    - hermitian_gue: (G + G†)/2

    相同的 spec 產生位元相同的輸出。
    """
    if not isinstance(spec.seed, (int, np.integer)) or not 0 <= spec.seed <= MASK64:
        raise InvalidSpec(f"種子必須是 64 位元無號整數，收到 {spec.seed}")
    if spec.dim < 2:
        raise InvalidSpec(f"dim 必須至少為 2，收到 {spec.dim}")
    try:
        ensemble = Ensemble(spec.ensemble)
    except ValueError as e:
        raise InvalidSpec(f"未知的系綜: {spec.ensemble}") from e

    rng = np.random.default_rng(int(spec.seed))
    d = spec.dim
    if ensemble is Ensemble.HAAR_PURE:
        return pure_state(_complex_gaussian(rng, d))
    g = _complex_gaussian(rng, (d, d))
    if ensemble is Ensemble.HS_MIXED:
        w = g @ g.conj().T
        w = (w + w.conj().T) / 2
        return density_state(w / np.trace(w).real)
    if ensemble is Ensemble.GINIBRE_OPERATOR:
        return Operator(g, "G")
    return Operator((g + g.conj().T) / 2, "H")


def sample_state(seed: int, dim: int, ensemble: Ensemble = Ensemble.HS_MIXED) -> DensityState:
    state = sample(RandomSpec(seed, dim, ensemble))
    assert isinstance(state, DensityState)
    return state


def sample_operator(seed: int, dim: int, ensemble: Ensemble = Ensemble.GINIBRE_OPERATOR) -> Operator:
    op = sample(RandomSpec(seed, dim, ensemble))
    assert isinstance(op, Operator)
    return op
