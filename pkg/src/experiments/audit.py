"""
隨機性質稽核
在帶種子的隨機系綜上逐一檢查統一等式、資訊算符下界、D 與 D − V 的半正定性、
D = ΣV_k 的閉合、r = d·rank(ρ)、θ 封閉解、Schrödinger 關係與和形式的還原，
以及 Maccone–Pati 下界被資訊算符下界涵蓋。
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from core.errors import InvalidParameters, UncertaintyKitError
from core.matrix import frobenius_norm, hermitian_eigensystem
from engines.bounds import eq8_bound, info_operator_bound, maccone_pati_bound, sur_bound, unified_equality
from engines.gram import (
    determinant_bound,
    gram_matrix,
    psd_order_check,
    quadratic_form_bound,
    schmidt_orthogonalize,
    uncertainty_equality,
    v_matrix,
)
from engines.moments import checked, form, generalized_brackets, second_origin_moment
from engines.report import DEFAULT_TOL
from model.operators import Operator, outer
from model.sampling import Ensemble, RandomSpec, sample, substream_seed
from model.states import DensityState, state_vector

logger = logging.getLogger(__name__)

MIN_DIM = 2
MAX_DIM = 8
THETA_GRID_POINTS = 4096
# 純代數恆等式的比較，不隨 satisfied 容差放寬
IDENTITY_TOL = 1e-12


@dataclass
class AuditReport:
    property: str
    trials: int = 0
    failures: int = 0
    worst_violation: float = 0.0
    failing_seeds: List[int] = field(default_factory=list)

    def record(self, seed: int, violation: float, ok: bool) -> None:
        self.trials += 1
        self.worst_violation = max(self.worst_violation, violation)
        if not ok:
            self.failures += 1
            self.failing_seeds.append(seed)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "property": self.property,
            "trials": self.trials,
            "failures": self.failures,
            "worst_violation": self.worst_violation,
            "failing_seeds": list(self.failing_seeds),
        }


@dataclass
class _Draw:
    seed: int
    rho: DensityState
    a: Operator
    b: Operator
    o: Operator
    ha: Operator
    hb: Operator
    pure: DensityState
    perp: np.ndarray


def _sample(seed: int, dim: int, ensemble: Ensemble, k: int):
    return sample(RandomSpec(seed, dim, ensemble).trial(k))


def _orthogonal_vector(seed: int, psi: np.ndarray) -> np.ndarray:
    rng = np.random.default_rng(seed)
    g = rng.standard_normal(psi.size) + 1j * rng.standard_normal(psi.size)
    g = g - np.vdot(psi, g) * psi
    return g / np.linalg.norm(g)


def _draw(seed: int, dim: int, state: Optional[DensityState]) -> _Draw:
    rho = state if state is not None else _sample(seed, dim, Ensemble.HS_MIXED, 0)
    pure = _sample(seed, dim, Ensemble.HAAR_PURE, 6)
    return _Draw(
        seed=seed,
        rho=rho,
        a=_sample(seed, dim, Ensemble.GINIBRE_OPERATOR, 1),
        b=_sample(seed, dim, Ensemble.GINIBRE_OPERATOR, 2),
        o=_sample(seed, dim, Ensemble.GINIBRE_OPERATOR, 3),
        ha=_sample(seed, dim, Ensemble.HERMITIAN_GUE, 4),
        hb=_sample(seed, dim, Ensemble.HERMITIAN_GUE, 5),
        pure=pure,
        perp=_orthogonal_vector(substream_seed(seed, 7), state_vector(pure)),
    )


def _unified_residual(d: _Draw, tol: float) -> tuple[float, bool]:
    report = unified_equality(d.rho, d.a, d.b)
    return float(report.components["relative_residual"]), report.satisfied


def _info_bound(d: _Draw, tol: float) -> tuple[float, bool]:
    report = info_operator_bound(d.rho, d.a, d.o, tol)
    excess = report.rhs - report.lhs
    return max(excess, -report.rhs, 0.0), excess <= tol and report.rhs >= 0.0


def _gram_psd(d: _Draw, tol: float) -> tuple[float, bool]:
    gram = gram_matrix(d.rho, [d.ha, d.hb, d.a])
    min_eigenvalue = hermitian_eigensystem(gram.d_matrix).min
    return max(-min_eigenvalue, 0.0), min_eigenvalue >= -tol


def _gram_minus_v_psd(d: _Draw, tol: float) -> tuple[float, bool]:
    observables = [d.ha, d.hb]
    gram = gram_matrix(d.rho, observables)
    _, min_eigenvalue = psd_order_check(gram.d_matrix, v_matrix(d.rho, observables, d.o))
    return max(-min_eigenvalue, 0.0), min_eigenvalue >= -tol * max(1.0, frobenius_norm(gram.d_matrix))


def _closure(d: _Draw, tol: float) -> tuple[float, bool]:
    theta = schmidt_orthogonalize(d.rho)
    decomposition = uncertainty_equality(d.rho, [d.ha, d.hb, d.a], theta)
    relative = decomposition.closure_residual / max(1.0, frobenius_norm(decomposition.d_matrix))
    return relative, relative <= tol


def _rank(d: _Draw, tol: float) -> tuple[float, bool]:
    theta = schmidt_orthogonalize(d.rho)
    expected = d.rho.dim * d.rho.rank
    return float(abs(theta.r - expected)), theta.r == expected


def _theta_grid(d: _Draw, tol: float) -> tuple[float, bool]:
    # 直接以 |u + e^{iθ}v|²/⟨O†O⟩ − 2Re(e^{iθ}w₀) 在網格上求值，與封閉解比較
    closed = eq8_bound(d.rho, d.ha, d.hb, d.a, d.o).rhs
    a_chk, b_chk = checked(d.rho, d.ha), checked(d.rho, d.hb)
    w0 = form(d.rho, a_chk, b_chk)
    phases = np.exp(1j * np.linspace(0.0, 2 * math.pi, THETA_GRID_POINTS, endpoint=False))
    best = -math.inf
    for o in (d.a, d.o):
        no = second_origin_moment(d.rho, o)
        u, v = form(d.rho, o, a_chk), form(d.rho, o, b_chk)
        values = np.abs(u + phases * v) ** 2 / no - 2 * np.real(phases * w0)
        best = max(best, float(values.max()))
    excess = best - closed
    return max(excess, 0.0), excess <= tol


def _sur_recovery(d: _Draw, tol: float) -> tuple[float, bool]:
    sur = sur_bound(d.rho, d.ha, d.hb)
    unified = unified_equality(d.rho, checked(d.rho, d.ha), checked(d.rho, d.hb))
    det = determinant_bound(d.rho, [d.ha, d.hb])
    brackets = unified.components["commutator_term"] + unified.components["anticommutator_term"]
    errors = (
        abs(brackets - sur.rhs),
        abs(unified.lhs - sur.lhs),
        abs(det.lhs - sur.slack),
    )
    worst = max(errors)
    return worst, worst <= IDENTITY_TOL * max(1.0, abs(sur.lhs))


def _sum_form_recovery(d: _Draw, tol: float) -> tuple[float, bool]:
    # X = (1, ∓i) 時 X†DX ≥ 0 即 ΔA² + ΔB² ≥ ±i⟨[A,B]⟩
    commutator_ev, _ = generalized_brackets(d.rho, d.ha, d.hb)
    worst, ok = 0.0, True
    for sign in (1, -1):
        report = quadratic_form_bound(d.rho, [d.ha, d.hb], [1, -sign * 1j], tol=tol)
        mismatch = abs(report.rhs - (sign * 1j * commutator_ev).real)
        worst = max(worst, mismatch, -report.slack)
        ok = ok and report.satisfied and mismatch <= IDENTITY_TOL * max(1.0, report.lhs)
    return worst, ok


def _maccone_pati_recovery(d: _Draw, tol: float) -> tuple[float, bool]:
    # R = |ψ⊥⟩⟨ψ| 時資訊算符下界不低於 Maccone–Pati 下界
    mp = maccone_pati_bound(d.pure, d.ha, d.hb, d.perp, "best", tol)
    info = eq8_bound(d.pure, d.ha, d.hb, outer(d.perp, state_vector(d.pure), "R"), tol=tol)
    gap = mp.rhs - info.rhs
    return max(gap, -mp.slack, 0.0), gap <= tol and mp.satisfied


PROPERTIES: Dict[str, Callable[[_Draw, float], tuple[float, bool]]] = {
    "unified_equality_residual": _unified_residual,
    "info_operator_bound": _info_bound,
    "gram_psd": _gram_psd,
    "gram_minus_v_psd": _gram_minus_v_psd,
    "uncertainty_equality_closure": _closure,
    "rank_equals_d_times_rank_rho": _rank,
    "eq8_closed_form_vs_grid": _theta_grid,
    "sur_recovery": _sur_recovery,
    "sum_form_recovery": _sum_form_recovery,
    "maccone_pati_recovery": _maccone_pati_recovery,
}


def run_audit(
    dim: int,
    trials: int,
    seed: int,
    state: Optional[DensityState] = None,
    progress: Optional[Callable[[int, int], None]] = None,
    tol: float = DEFAULT_TOL,
) -> List[AuditReport]:
    """
    在 trials 組隨機抽樣上執行整套性質檢查。

    state 提供時所有試驗都使用此態（維度取自態本身），只隨機抽取算符；
    Maccone–Pati 的還原需要純態，一律使用另外抽取的 Haar 純態。
    不等式的餘裕與閉合殘差以 tol 判定，代數恆等式固定使用 1e-12。

    Raises:
        InvalidParameters: dim 不在 2..8 或 trials < 1
    """
    if state is not None:
        dim = state.dim
    if not MIN_DIM <= dim <= MAX_DIM:
        raise InvalidParameters(f"dim 必須介於 {MIN_DIM} 與 {MAX_DIM} 之間，收到 {dim}")
    if trials < 1:
        raise InvalidParameters(f"trials 必須至少為 1，收到 {trials}")

    reports = {name: AuditReport(name) for name in PROPERTIES}
    for k in range(trials):
        trial_seed = substream_seed(seed, k)
        draw = _draw(trial_seed, dim, state)
        for name, check in PROPERTIES.items():
            try:
                violation, ok = check(draw, tol)
            except UncertaintyKitError as e:
                logger.warning("性質 %s 在種子 %d 上出錯: %s", name, trial_seed, e)
                violation, ok = math.inf, False
            reports[name].record(trial_seed, violation, ok)
        if progress:
            progress(k + 1, trials)

    for report in reports.values():
        if report.failures:
            logger.warning("%s: %d/%d 次失敗", report.property, report.failures, report.trials)
    return list(reports.values())
