"""
矩量引擎
負責期望值、去均值算符、變異數、二階原點矩、態加權半雙線性形式與廣義對易子
"""

from dataclasses import dataclass
from typing import Any, Dict, Tuple

import numpy as np

from core.errors import DimensionMismatch, NumericalInconsistency
from model.operators import Operator
from model.states import DensityState

IMAG_LEAK_TOL = 1e-10
ROUNDOFF_CLAMP = 1e-12


@dataclass(frozen=True)
class MomentReport:
    expectation: complex
    second_origin_moment: float
    variance: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "expectation": [float(self.expectation.real), float(self.expectation.imag)],
            "second_origin_moment": self.second_origin_moment,
            "variance": self.variance,
        }


def _check_dims(rho: DensityState, *ops: Operator) -> None:
    for op in ops:
        if op.dim != rho.dim:
            raise DimensionMismatch(f"算符維度 {op.dim} 與態的維度 {rho.dim} 不符")


def _real(value: complex, what: str) -> float:
    """取實部；虛部洩漏超過 1e-10 時拋出錯誤而非靜默截斷"""
    if abs(value.imag) > IMAG_LEAK_TOL:
        raise NumericalInconsistency(f"{what} 應為實數，但虛部為 {value.imag:.3e}")
    return float(value.real)


def _nonnegative(value: float, what: str) -> float:
    if value < 0.0:
        if value < -ROUNDOFF_CLAMP:
            raise NumericalInconsistency(f"{what} 應為非負，卻得到 {value:.3e}")
        return 0.0
    return value


def expectation(rho: DensityState, q: Operator) -> complex:
    """⟨Q⟩ = Tr(ρQ)"""
    _check_dims(rho, q)
    return complex(np.einsum("ij,ji->", rho.rho, q.matrix))


def checked(rho: DensityState, q: Operator) -> Operator:
    """Q̌ = Q − ⟨Q⟩·I，對非厄米算符也使用完整的複數期望值"""
    mean = expectation(rho, q)
    label = f"{q.label}ˇ" if q.label else ""
    return Operator(q.matrix - mean * np.eye(q.dim), label)


def form(rho: DensityState, a: Operator, b: Operator) -> complex:
    """態加權半雙線性形式 ⟨A†B⟩ = Tr(ρA†B)，滿足 form(a,b) = conj(form(b,a))"""
    _check_dims(rho, a, b)
    return complex(np.einsum("ij,kj,ki->", rho.rho, a.matrix.conj(), b.matrix))


def second_origin_moment(rho: DensityState, q: Operator) -> float:
    """二階原點矩 ⟨Q†Q⟩，對任何算符皆為非負實數"""
    value = _real(form(rho, q, q), "⟨Q†Q⟩")
    return _nonnegative(value, "⟨Q†Q⟩")


def variance(rho: DensityState, q: Operator) -> float:
    """ΔQ² = ⟨Q̌†Q̌⟩ = ⟨Q†Q⟩ − |⟨Q⟩|²"""
    return second_origin_moment(rho, checked(rho, q))


def moments(rho: DensityState, q: Operator) -> MomentReport:
    return MomentReport(
        expectation=expectation(rho, q),
        second_origin_moment=second_origin_moment(rho, q),
        variance=variance(rho, q),
    )


def generalized_brackets(rho: DensityState, a: Operator, b: Operator) -> Tuple[complex, complex]:
    """
    廣義對易子與反對易子的期望值。

    [A,B]_G = A†B − B†A，{A,B}_G = A†B + B†A。兩者都由同一個 ⟨A†B⟩ 得到，
    因此 commutator_ev + anticommutator_ev = 2·form(ρ,a,b) 精確成立；
    A、B 皆為厄米時與普通的 ⟨[A,B]⟩、⟨{A,B}⟩ 相同。

    Returns:
        (commutator_ev, anticommutator_ev)
    """
    w = form(rho, a, b)
    return w - w.conjugate(), w + w.conjugate()


def ordinary_brackets(rho: DensityState, a: Operator, b: Operator) -> Tuple[complex, complex]:
    """普通的 ⟨[A,B]⟩ 與 ⟨{A,B}⟩，非厄米算符時不保證為厄米量"""
    _check_dims(rho, a, b)
    ab = a.matrix @ b.matrix
    ba = b.matrix @ a.matrix
    return (
        expectation(rho, Operator(ab - ba)),
        expectation(rho, Operator(ab + ba)),
    )
