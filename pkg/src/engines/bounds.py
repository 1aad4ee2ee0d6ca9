"""
不確定關係評估模組

涵蓋 Schrödinger 乘積形式、Maccone–Pati 和形式、統一不確定等式、
資訊算符下界，以及帶相位 θ 的資訊算符和形式下界（θ 以封閉形式求最大值）。
"""

import logging
import math
from typing import Dict, Literal, Mapping, Optional, Sequence

import numpy as np

from core.errors import (
    DegenerateInformationOperator,
    DimensionMismatch,
    InvalidParameters,
    NotHermitian,
    NotOrthogonal,
    NumericalInconsistency,
)
from engines.moments import (
    _real,
    checked,
    expectation,
    form,
    generalized_brackets,
    ordinary_brackets,
    second_origin_moment,
    variance,
)
from engines.report import DEFAULT_TOL, EQUALITY_TOL, BoundReport, Component, equality, inequality
from model.operators import Operator, boson_annihilator, identity_operator, ladder_operators, tensor_product
from model.states import DensityState, pure_state

logger = logging.getLogger(__name__)

DEGENERACY_TOL = 1e-12
ORTHOGONALITY_TOL = 1e-8
CROSS_CHECK_TOL = 1e-10

Sign = Literal["plus", "minus", "best"]
SIGNS = {"plus": 1, "minus": -1}


def _require_hermitian(*ops: Operator) -> None:
    for op in ops:
        if not op.hermitian:
            raise NotHermitian(f"{op.label or '算符'} 必須是厄米算符（可觀測量）")


def sur_bound(rho: DensityState, a: Operator, b: Operator, tol: float = DEFAULT_TOL) -> BoundReport:
    """
    Schrödinger 不確定關係 ΔA²ΔB² ≥ ¼|⟨[A,B]⟩|² + ¼|⟨{Ǎ,B̌}⟩|²。

    Raises:
        NotHermitian: a 或 b 不是厄米算符
    """
    _require_hermitian(a, b)
    commutator_ev, _ = generalized_brackets(rho, a, b)
    _, anticommutator_ev = generalized_brackets(rho, checked(rho, a), checked(rho, b))
    commutator_term = abs(commutator_ev) ** 2 / 4
    anticommutator_term = abs(anticommutator_ev) ** 2 / 4
    return inequality(
        "sur",
        variance(rho, a) * variance(rho, b),
        commutator_term + anticommutator_term,
        tol,
        {
            "commutator_term": commutator_term,
            "anticommutator_term": anticommutator_term,
            "commutator_ev": commutator_ev,
            "anticommutator_ev": anticommutator_ev,
        },
    )


def _validated_perp(rho: DensityState, psi_perp: Sequence[complex], tol: float) -> np.ndarray:
    perp = np.asarray(psi_perp, dtype=np.complex128).reshape(-1)
    if perp.size != rho.dim:
        raise InvalidParameters(f"ψ⊥ 的長度 {perp.size} 與態的維度 {rho.dim} 不符")
    if abs(np.linalg.norm(perp) - 1.0) > tol:
        raise InvalidParameters(f"ψ⊥ 必須歸一化，‖ψ⊥‖ = {np.linalg.norm(perp):.12g}")
    leak = float(np.linalg.norm(rho.rho @ perp))
    if leak > tol:
        raise NotOrthogonal(f"ψ⊥ 未與 ρ 的支撐正交: ‖ρψ⊥‖ = {leak:.3e}")
    return perp


def _maccone_pati_branch(
    rho: DensityState, a: Operator, b: Operator, perp: np.ndarray, s: int
) -> Dict[str, float]:
    # s·i⟨[A,B]⟩ + Tr(ρ (A + s·iB)|ψ⊥⟩⟨ψ⊥|(A − s·iB))；純態時後項即 |⟨ψ|A + s·iB|ψ⊥⟩|²
    commutator_ev, _ = generalized_brackets(rho, a, b)
    commutator_term = _real(s * 1j * commutator_ev, "i⟨[A,B]⟩")
    x = (a.matrix + s * 1j * b.matrix) @ perp
    overlap = max(_real(complex(np.vdot(x, rho.rho @ x)), "⟨ψ⊥|G†ρG|ψ⊥⟩"), 0.0)
    return {"commutator_term": commutator_term, "overlap_term": overlap, "rhs": commutator_term + overlap}


def maccone_pati_bound(
    rho: DensityState,
    a: Operator,
    b: Operator,
    psi_perp: Sequence[complex],
    sign: Sign = "best",
    tol: float = DEFAULT_TOL,
    orthogonality_tol: float = ORTHOGONALITY_TOL,
) -> BoundReport:
    """
    Maccone–Pati 和形式 ΔA² + ΔB² ≥ ±i⟨[A,B]⟩ + |⟨ψ|A ± iB|ψ⊥⟩|²。

    混合態使用 Tr(ρ(A ± iB)|ψ⊥⟩⟨ψ⊥|(A ∓ iB)) 取代平方項，要求 ψ⊥ 與 ρ 的整個支撐正交，
    與系綜分解無關。sign="best" 兩個分支都算，保留較大的下界。

    Raises:
        NotHermitian: a 或 b 不是厄米算符
        NotOrthogonal: ‖ρψ⊥‖ > orthogonality_tol
    """
    _require_hermitian(a, b)
    if sign not in ("plus", "minus", "best"):
        raise InvalidParameters(f"sign 必須是 plus、minus 或 best，收到 {sign}")
    perp = _validated_perp(rho, psi_perp, orthogonality_tol)

    branches = {name: _maccone_pati_branch(rho, a, b, perp, s) for name, s in SIGNS.items()}
    if sign == "best":
        chosen = max(branches, key=lambda name: branches[name]["rhs"])
    else:
        chosen = sign

    components: Dict[str, Component] = {"chosen_sign": chosen}
    for name, branch in branches.items():
        for key, value in branch.items():
            components[f"{key}_{name}"] = value
    return inequality(
        "maccone_pati",
        variance(rho, a) + variance(rho, b),
        branches[chosen]["rhs"],
        tol,
        components,
    )


def remainder_operator(rho: DensityState, a: Operator, b: Operator) -> Operator:
    """C = A − ⟨B†A⟩B/⟨B†B⟩"""
    nb = second_origin_moment(rho, b)
    if nb <= DEGENERACY_TOL:
        raise DegenerateInformationOperator(f"⟨B†B⟩ = {nb:.3e}，餘項算符 C 無定義")
    return Operator(a.matrix - (form(rho, b, a) / nb) * b.matrix, "C")


def unified_equality(
    rho: DensityState,
    a: Operator,
    b: Operator,
    tol: float = EQUALITY_TOL,
) -> BoundReport:
    """
    統一不確定等式
    ⟨A†A⟩⟨B†B⟩ = ¼|⟨[A,B]_G⟩|² + ¼|⟨{A,B}_G⟩|² + ⟨C†C⟩⟨B†B⟩。

    A、B 可為任意算符。C 明確建構後獨立計算，兩邊不共享中間結果。

    Raises:
        DegenerateInformationOperator: ⟨B†B⟩ ≤ 1e-12
    """
    c = remainder_operator(rho, a, b)
    nb = second_origin_moment(rho, b)
    commutator_ev, anticommutator_ev = generalized_brackets(rho, a, b)
    commutator_term = abs(commutator_ev) ** 2 / 4
    anticommutator_term = abs(anticommutator_ev) ** 2 / 4
    remainder_term = second_origin_moment(rho, c) * nb
    return equality(
        "unified",
        second_origin_moment(rho, a) * nb,
        commutator_term + anticommutator_term + remainder_term,
        tol,
        {
            "commutator_term": commutator_term,
            "anticommutator_term": anticommutator_term,
            "remainder_term": remainder_term,
            "commutator_ev": commutator_ev,
            "anticommutator_ev": anticommutator_ev,
        },
    )


def info_operator_bound(
    rho: DensityState, f: Operator, o: Operator, tol: float = DEFAULT_TOL
) -> BoundReport:
    """
    資訊算符下界 ⟨F†F⟩ ≥ (|⟨i[F,O]_G⟩|² + |⟨{F,O}_G⟩|²) / (4⟨O†O⟩)。

    對易子項取 Tr(ρ(F†O ∓ O†F)) 以矩陣乘積直接計算，
    與以形式求得的 |⟨O†F⟩|²/⟨O†O⟩ 交叉檢查。

    Raises:
        DegenerateInformationOperator: ⟨O†O⟩ ≤ 1e-12
        DimensionMismatch: F、O 與 ρ 的維度不一致
        NumericalInconsistency: 兩種算法相差超過 1e-10 · max(1, ⟨F†F⟩)
    """
    if not f.dim == o.dim == rho.dim:
        raise DimensionMismatch(f"F、O 與 ρ 的維度不一致: {f.dim}, {o.dim}, {rho.dim}")
    no = second_origin_moment(rho, o)
    if no <= DEGENERACY_TOL:
        raise DegenerateInformationOperator(f"⟨O†O⟩ = {no:.3e}，資訊算符不提供任何資訊")
    fo = f.matrix.conj().T @ o.matrix
    of = o.matrix.conj().T @ f.matrix
    commutator_ev = expectation(rho, Operator(fo - of))
    anticommutator_ev = expectation(rho, Operator(fo + of))
    rhs = (abs(1j * commutator_ev) ** 2 + abs(anticommutator_ev) ** 2) / (4 * no)
    projection = abs(form(rho, o, f)) ** 2 / no
    nf = second_origin_moment(rho, f)
    if abs(rhs - projection) > CROSS_CHECK_TOL * max(1.0, nf):
        raise NumericalInconsistency(f"資訊算符下界交叉檢查失敗: {rhs!r} ≠ {projection!r}")
    return inequality(
        "info",
        nf,
        rhs,
        tol,
        {
            "commutator_term": abs(commutator_ev) ** 2 / (4 * no),
            "anticommutator_term": abs(anticommutator_ev) ** 2 / (4 * no),
            "info_norm": no,
            "projection_term": projection,
        },
    )


def info_operators_bound(
    rho: DensityState,
    a: Operator,
    b: Operator,
    candidates: Mapping[str, Optional[Operator]],
    tol: float = DEFAULT_TOL,
    name: str = "info_operators",
) -> BoundReport:
    """
    ΔA² + ΔB² ≥ max_O max_θ {|⟨O†(Ǎ + e^{iθ}B̌)⟩|²/⟨O†O⟩ − ⟨{Ǎ, e^{iθ}B̌}_G⟩}。

    對每個候選 O，令 u = ⟨O†Ǎ⟩、v = ⟨O†B̌⟩、w₀ = ⟨ǍB̌⟩，則下界為
    c₀ + 2Re(e^{iθ}z)，c₀ = (|u|² + |v|²)/⟨O†O⟩，z = v·ū/⟨O†O⟩ − w₀，
    於 θ* = −arg z 取得最大值 c₀ + 2|z|。⟨O†O⟩ ≤ 1e-12 的候選不計入。

    Raises:
        NotHermitian: a 或 b 不是厄米算符
        DegenerateInformationOperator: 所有候選都退化
    """
    _require_hermitian(a, b)
    a_chk, b_chk = checked(rho, a), checked(rho, b)
    w0 = form(rho, a_chk, b_chk)

    components: Dict[str, Component] = {"cross_moment": w0}
    best_label: Optional[str] = None
    best_value = -math.inf
    best_theta = 0.0
    for label, o in candidates.items():
        if o is None:
            continue
        no = second_origin_moment(rho, o)
        if no <= DEGENERACY_TOL:
            logger.debug("資訊算符 %s 退化 (⟨O†O⟩ = %.3e)，略過", label, no)
            components[f"LB_{label}"] = None
            continue
        u = form(rho, o, a_chk)
        v = form(rho, o, b_chk)
        c0 = (abs(u) ** 2 + abs(v) ** 2) / no
        z = v * u.conjugate() / no - w0
        theta = (-np.angle(z)) % (2 * math.pi) if z != 0 else 0.0
        value = c0 + 2 * abs(z)
        components[f"LB_{label}"] = value
        components[f"theta_{label}"] = float(theta)
        if value > best_value:
            best_label, best_value, best_theta = label, value, float(theta)

    if best_label is None:
        raise DegenerateInformationOperator("所有資訊算符候選的 ⟨O†O⟩ 皆為零")
    components["chosen_info_operator"] = best_label
    components["chosen_phase"] = best_theta
    return inequality(name, variance(rho, a) + variance(rho, b), best_value, tol, components)


def eq8_bound(
    rho: DensityState,
    a: Operator,
    b: Operator,
    r_op: Operator,
    s_op: Optional[Operator] = None,
    tol: float = DEFAULT_TOL,
) -> BoundReport:
    """以 R、S 兩個資訊算符計算和形式下界，見 info_operators_bound"""
    return info_operators_bound(rho, a, b, {"R": r_op, "S": s_op}, tol, name="eq8")


def optimal_information_operator(
    rho: DensityState, a: Operator, b: Operator, lambda1: complex = 1.0, lambda2: complex = 1.0
) -> Operator:
    """λ₁Ǎ + λ₂B̌；|λ₁| = |λ₂| ≠ 0 時 eq8_bound 成為等式"""
    a_chk, b_chk = checked(rho, a), checked(rho, b)
    return Operator(lambda1 * a_chk.matrix + lambda2 * b_chk.matrix, "λ₁Ǎ+λ₂B̌")


def demo_nonhermitian(rho: DensityState, tol: float = DEFAULT_TOL) -> BoundReport:
    """
    以 σ± 示範普通對易子的 SUR 形式對非厄米算符失效。

    lhs = Δσ+²Δσ−²，rhs = ¼|⟨[σ+,σ−]⟩|² + ¼|⟨{σ̌+,σ̌−}⟩|²（普通括號），
    satisfied 可能為 False。同時在 ⟨σ+σ−⟩ > 0 時計算統一等式並記錄殘差。
    """
    if rho.dim != 2:
        raise InvalidParameters(f"σ± 示範需要 2×2 的態，收到 d={rho.dim}")
    sigma_plus, sigma_minus = ladder_operators()
    commutator_ev, _ = ordinary_brackets(rho, sigma_plus, sigma_minus)
    _, anticommutator_ev = ordinary_brackets(rho, checked(rho, sigma_plus), checked(rho, sigma_minus))
    g_commutator_ev, g_anticommutator_ev = generalized_brackets(rho, sigma_plus, sigma_minus)
    components: Dict[str, Component] = {
        "variance_sigma_plus": variance(rho, sigma_plus),
        "variance_sigma_minus": variance(rho, sigma_minus),
        "commutator_term": abs(commutator_ev) ** 2 / 4,
        "anticommutator_term": abs(anticommutator_ev) ** 2 / 4,
        "generalized_commutator_ev": g_commutator_ev,
        "generalized_anticommutator_ev": g_anticommutator_ev,
    }
    try:
        unified = unified_equality(rho, sigma_plus, sigma_minus)
        components["unified_lhs"] = unified.lhs
        components["unified_remainder_term"] = unified.components["remainder_term"]
        components["unified_residual"] = unified.components["residual"]
        components["unified_satisfied"] = unified.satisfied
    except DegenerateInformationOperator:
        components["unified_residual"] = None
        components["unified_satisfied"] = None

    lhs = variance(rho, sigma_plus) * variance(rho, sigma_minus)
    rhs = (abs(commutator_ev) ** 2 + abs(anticommutator_ev) ** 2) / 4
    components["naive_violated"] = lhs - rhs < -tol
    return inequality("naive_sur_nonhermitian", lhs, rhs, tol, components)


def two_mode_annihilators(cutoff: int = 3) -> tuple[Operator, Operator]:
    """a₁ = a⊗I 與 a₂ = I⊗a，基底 |n₁n₂⟩ 的索引為 n₁·cutoff + n₂"""
    a = boson_annihilator(cutoff)
    eye = identity_operator(cutoff)
    a1 = tensor_product(a, eye)
    a2 = tensor_product(eye, a)
    return Operator(a1.matrix, "a₁"), Operator(a2.matrix, "a₂")


def two_mode_state(cutoff: int, amplitudes: Mapping[tuple[int, int], complex]) -> DensityState:
    """由 {(n₁, n₂): 振幅} 建構雙模純態"""
    psi = np.zeros(cutoff * cutoff, dtype=np.complex128)
    for (n1, n2), amp in amplitudes.items():
        if not (0 <= n1 < cutoff and 0 <= n2 < cutoff):
            raise InvalidParameters(f"Fock 能階 ({n1}, {n2}) 超出截斷 {cutoff}")
        psi[n1 * cutoff + n2] = amp
    return pure_state(psi)


def demo_boson(rho: DensityState, cutoff: int = 3, tol: float = DEFAULT_TOL) -> BoundReport:
    """
    雙子系統能量下界 ⟨a₁†a₁⟩⟨a₂†a₂⟩ ≥ ¼|⟨[a₁,a₂]_G⟩|² + ¼|⟨{a₁,a₂}_G⟩|²。

    只在截斷的 Fock 子空間內成立；⟨n₂⟩ > 0 時附上統一等式的餘項。
    """
    a1, a2 = two_mode_annihilators(cutoff)
    if rho.dim != a1.dim:
        raise InvalidParameters(f"雙模態的維度必須是 {a1.dim}，收到 {rho.dim}")
    n1 = second_origin_moment(rho, a1)
    n2 = second_origin_moment(rho, a2)
    commutator_ev, anticommutator_ev = generalized_brackets(rho, a1, a2)
    components: Dict[str, Component] = {
        "energy_1": n1,
        "energy_2": n2,
        "commutator_term": abs(commutator_ev) ** 2 / 4,
        "anticommutator_term": abs(anticommutator_ev) ** 2 / 4,
        "remainder_term": 0.0,
    }
    if n2 > DEGENERACY_TOL:
        unified = unified_equality(rho, a1, a2)
        components["remainder_term"] = unified.components["remainder_term"]
        components["unified_residual"] = unified.components["residual"]
    return inequality(
        "boson_energy",
        n1 * n2,
        components["commutator_term"] + components["anticommutator_term"],
        tol,
        components,
    )
