"""
Gram 矩陣引擎

負責 Gram 矩陣 D、資訊矩陣 V 與 V_k、半正定序檢查、
以態加權形式進行的 Schmidt（Gram–Schmidt）正交化，以及不確定等式 D = Σ V_k。
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Literal, Optional, Sequence, Tuple, Union

import numpy as np

from core.codec import matrix_to_dict
from core.errors import (
    DegenerateInformationOperator,
    DimensionMismatch,
    EmptyBasis,
    IndexOutOfRange,
    InvalidParameters,
    NotHermitian,
    NumericalInconsistency,
)
from core.matrix import (
    HERMITIAN_TOL,
    ComplexMatrix,
    as_matrix,
    frobenius_norm,
    hermitian_eigensystem,
    is_hermitian,
)
from engines.bounds import DEGENERACY_TOL
from engines.moments import checked, second_origin_moment
from engines.report import DEFAULT_TOL, BoundReport, Component, inequality
from model.operators import Operator, matrix_units
from model.states import DensityState

logger = logging.getLogger(__name__)

PSD_TOL = 1e-10
DROP_THRESHOLD = 1e-10
ORTHOGONALITY_TOL = 1e-9
CLOSURE_TOL = 1e-9
REORTHOGONALIZE_COEFFICIENT = 10.0
REORTHOGONALIZE_NORM_RATIO = 0.7
DEFAULT_RESTARTS = 8
CONVERGENCE_TOL = 1e-12
MAX_SWEEPS = 1000


@dataclass(frozen=True)
class GramMatrix:
    d_matrix: ComplexMatrix
    observables: List[Operator]
    state_ref: str


@dataclass(frozen=True)
class OrthoOperatorSet:
    """
    在 ρ 的態加權形式下兩兩正交的算符集合 Θ = {O_1, ..., O_r}。

    norms[k] = ⟨O_k†O_k⟩ > drop_threshold；state 為建構時使用的態。
    """

    operators: List[Operator]
    norms: List[float]
    r: int
    source: str
    drop_threshold: float
    state: DensityState

    def to_dict(self) -> Dict[str, Any]:
        return {
            "r": self.r,
            "source": self.source,
            "drop_threshold": self.drop_threshold,
            "state": self.state.describe(),
            "labels": [o.label for o in self.operators],
            "norms": list(self.norms),
            "operators": [matrix_to_dict(o.matrix) for o in self.operators],
        }


@dataclass(frozen=True)
class GramDecomposition:
    d_matrix: ComplexMatrix
    v_matrices: List[ComplexMatrix]
    closure_residual: float

    def partial_sum(self, k: int) -> ComplexMatrix:
        """前 k 個 V_j 的和"""
        total = np.zeros_like(self.d_matrix)
        for v in self.v_matrices[:k]:
            total = total + v
        return as_matrix(total)

    @property
    def closed(self) -> bool:
        return self.closure_residual <= CLOSURE_TOL * max(1.0, frobenius_norm(self.d_matrix))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "d_matrix": matrix_to_dict(self.d_matrix),
            "v_matrices": [matrix_to_dict(v) for v in self.v_matrices],
            "closure_residual": self.closure_residual,
            "closed": self.closed,
        }


def _form(rho: np.ndarray, a: np.ndarray, b: np.ndarray) -> complex:
    # Tr(ρA†B) = Tr(A†Bρ)
    return complex(np.vdot(a, b @ rho))


def _check_dims(rho: DensityState, ops: Sequence[Operator]) -> None:
    for op in ops:
        if op.dim != rho.dim:
            raise DimensionMismatch(f"算符維度 {op.dim} 與態的維度 {rho.dim} 不符")


def _checked_list(rho: DensityState, observables: Sequence[Operator]) -> List[Operator]:
    if len(observables) < 1:
        raise InvalidParameters("至少需要一個可觀測量")
    _check_dims(rho, observables)
    return [checked(rho, a) for a in observables]


def _gram_of(rho: DensityState, ops: Sequence[Operator]) -> np.ndarray:
    n = len(ops)
    g = np.empty((n, n), dtype=np.complex128)
    for m in range(n):
        for k in range(m, n):
            g[m, k] = _form(rho.rho, ops[m].matrix, ops[k].matrix)
            g[k, m] = g[m, k].conjugate()
        g[m, m] = g[m, m].real
    return g


def _require_psd(m: np.ndarray, what: str) -> None:
    eig = hermitian_eigensystem(as_matrix(m), HERMITIAN_TOL)
    if eig.min < -PSD_TOL * max(1.0, eig.max):
        raise NumericalInconsistency(f"{what} 應為半正定，最小特徵值 {eig.min:.3e}")


def gram_matrix(rho: DensityState, observables: Sequence[Operator]) -> GramMatrix:
    """D(m,n) = ⟨Ǎ_m†Ǎ_n⟩，可觀測量於內部先去均值"""
    checked_obs = _checked_list(rho, observables)
    d = _gram_of(rho, checked_obs)
    _require_psd(d, "Gram 矩陣 D")
    return GramMatrix(d_matrix=as_matrix(d), observables=checked_obs, state_ref=rho.describe())


def _information_vector(rho: DensityState, checked_obs: Sequence[Operator], o: Operator) -> Tuple[np.ndarray, float]:
    norm = second_origin_moment(rho, o)
    if norm <= DEGENERACY_TOL:
        raise DegenerateInformationOperator(f"⟨O†O⟩ = {norm:.3e}，無法建構 V")
    w = np.array([_form(rho.rho, o.matrix, a.matrix) for a in checked_obs])
    return w, norm


def v_matrix(rho: DensityState, observables: Sequence[Operator], o: Operator) -> ComplexMatrix:
    """
    V(m,n) = ⟨Ǎ_m†O⟩⟨O†Ǎ_n⟩/⟨O†O⟩。

    令 w_m = ⟨O†Ǎ_m⟩，則 ⟨Ǎ_m†O⟩ = conj(w_m)，V = conj(w) wᵀ / ⟨O†O⟩，秩不超過 1。

    Raises:
        DegenerateInformationOperator: ⟨O†O⟩ ≤ 1e-12
    """
    _check_dims(rho, [o])
    w, norm = _information_vector(rho, _checked_list(rho, observables), o)
    return as_matrix(np.outer(w.conj(), w) / norm)


def psd_order_check(d: ComplexMatrix, v: ComplexMatrix, tol: float = PSD_TOL) -> Tuple[bool, float]:
    """
    檢查 D ⪰ V，即 D − V 為半正定。

    Returns:
        (holds, min_eigenvalue)：holds ⇔ 最小特徵值 ≥ −tol · max(1, max|D 的特徵值|)
    """
    if d.shape != v.shape:
        raise DimensionMismatch(f"形狀不符: {d.shape} 與 {v.shape}")
    for name, m in (("D", d), ("V", v)):
        if not is_hermitian(m, tol):
            raise NotHermitian(f"{name} 不是厄米矩陣")
    scale = float(np.max(np.abs(hermitian_eigensystem(d, tol).values)))
    min_eigenvalue = hermitian_eigensystem(as_matrix(d - v), tol).min
    return min_eigenvalue >= -tol * max(1.0, scale), min_eigenvalue


def schmidt_orthogonalize(
    rho: DensityState,
    basis: Optional[Sequence[Operator]] = None,
    drop_threshold: float = DROP_THRESHOLD,
) -> OrthoOperatorSet:
    """
    在態加權形式 ⟨A†B⟩ 下對算符基底做 Schmidt 正交化。

    依序對每個基底元素 V_k 計算 O = V_k − Σ_{j<k} (⟨O_j†V_k⟩/⟨O_j†O_j⟩)·O_j，
    任一投影係數超過 10 或範數降到原本的 0.7 以下時再完整投影一次。
    ⟨O†O⟩ 大於 drop_threshold × 最大基底範數者保留，其餘視為零向量捨棄。

    Args:
        rho: 定義形式的密度矩陣
        basis: 算符基底，省略時使用 d² 個矩陣單位（列優先）
        drop_threshold: 相對捨棄門檻

    Returns:
        OrthoOperatorSet: r 等於基底度規矩陣的秩

    Raises:
        EmptyBasis: 基底為空
        NumericalInconsistency: r 與度規矩陣的秩不符，或正交性不成立
    """
    source = "custom"
    if basis is None:
        basis = matrix_units(rho.dim)
        source = "matrix_units"
    if len(basis) == 0:
        raise EmptyBasis("Schmidt 正交化需要非空的基底")
    _check_dims(rho, basis)

    scale = max(_form(rho.rho, v.matrix, v.matrix).real for v in basis)
    threshold = drop_threshold * scale
    kept: List[np.ndarray] = []
    norms: List[float] = []
    labels: List[str] = []
    for v in basis:
        candidate = np.array(v.matrix)
        initial = _form(rho.rho, candidate, candidate).real
        coefficients = [_form(rho.rho, o, candidate) / n for o, n in zip(kept, norms)]
        for c, o in zip(coefficients, kept):
            candidate = candidate - c * o
        norm = _form(rho.rho, candidate, candidate).real
        needs_second_pass = any(abs(c) > REORTHOGONALIZE_COEFFICIENT for c in coefficients)
        if kept and (needs_second_pass or norm < REORTHOGONALIZE_NORM_RATIO * initial):
            for o, n in zip(kept, norms):
                candidate = candidate - (_form(rho.rho, o, candidate) / n) * o
            norm = _form(rho.rho, candidate, candidate).real
        if norm > threshold:
            kept.append(candidate)
            norms.append(norm)
            labels.append(f"O{len(kept)}[{v.label}]" if v.label else f"O{len(kept)}")
        else:
            logger.debug("捨棄 %s: ⟨O†O⟩ = %.3e", v.label or "基底元素", norm)

    operators = [Operator(o, label) for o, label in zip(kept, labels)]
    # 度規矩陣的秩與捨棄規則用同一個尺度，不帶 max(1, ·) 的絕對下限
    metric = hermitian_eigensystem(as_matrix(_gram_of(rho, list(basis))))
    metric_rank = int(np.count_nonzero(metric.values > threshold)) if scale > 0 else 0
    if metric_rank != len(operators):
        raise NumericalInconsistency(f"保留的算符數 {len(operators)} 與度規矩陣的秩 {metric_rank} 不符")
    for i in range(len(kept)):
        for j in range(i):
            overlap = abs(_form(rho.rho, kept[i], kept[j]))
            if overlap > ORTHOGONALITY_TOL * math.sqrt(norms[i] * norms[j]):
                raise NumericalInconsistency(f"O{i + 1} 與 O{j + 1} 未正交: |⟨O_i†O_j⟩| = {overlap:.3e}")

    return OrthoOperatorSet(
        operators=operators,
        norms=norms,
        r=len(operators),
        source=source,
        drop_threshold=drop_threshold,
        state=rho,
    )


def uncertainty_equality(
    rho: DensityState, observables: Sequence[Operator], theta: OrthoOperatorSet
) -> GramDecomposition:
    """D = Σ_k V_k；Θ 完備時 closure_residual ≤ 1e-9 · max(1, ‖D‖_F)"""
    if not np.array_equal(theta.state.rho, rho.rho):
        raise InvalidParameters("Θ 必須以同一個態建構")
    gram = gram_matrix(rho, observables)
    v_matrices = []
    for o, norm in zip(theta.operators, theta.norms):
        w = np.array([_form(rho.rho, o.matrix, a.matrix) for a in gram.observables])
        v_matrices.append(as_matrix(np.outer(w.conj(), w) / norm))
    total = np.sum(v_matrices, axis=0) if v_matrices else np.zeros_like(gram.d_matrix)
    residual = frobenius_norm(gram.d_matrix - total)
    logger.debug("D = ΣV_k 閉合殘差 %.3e (r=%d)", residual, theta.r)
    return GramDecomposition(d_matrix=gram.d_matrix, v_matrices=v_matrices, closure_residual=residual)


def _phase_objective(m: np.ndarray, x: np.ndarray) -> float:
    return float(np.real(np.vdot(x, m @ x)))


def _coordinate_ascent(m: np.ndarray, phases: np.ndarray) -> Tuple[np.ndarray, float]:
    # 對每個座標 θ_m，目標為 c + 2Re(e^{−iθ_m}y_m)，於 θ_m = arg y_m 取最大值；θ₁ 固定
    x = np.exp(1j * phases)
    value = _phase_objective(m, x)
    for _ in range(MAX_SWEEPS):
        previous = value
        for k in range(1, len(x)):
            y = m[k] @ x - m[k, k] * x[k]
            if y != 0:
                x[k] = y / abs(y)
        value = _phase_objective(m, x)
        if value - previous < CONVERGENCE_TOL:
            break
    return np.angle(x), value


def optimize_phases(
    m: ComplexMatrix,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
    initial_phases: Optional[Sequence[float]] = None,
) -> Tuple[np.ndarray, float]:
    """
    在 θ₁ = 0 的規範下最大化 X†MX，X_m = e^{iθ_m}。

    以座標上升法求解，每步為精確的單相位最大化；起點為 initial_phases（若提供）
    加上 restarts 組由 seed 決定的隨機相位。
    """
    n = m.shape[0]
    rng = np.random.default_rng(seed)
    starts = []
    if initial_phases is not None:
        warm = np.asarray(initial_phases, dtype=np.float64)
        starts.append(warm - warm[0])
    for _ in range(restarts):
        start = rng.uniform(0.0, 2 * math.pi, n)
        start[0] = 0.0
        starts.append(start)
    if not starts:
        starts.append(np.zeros(n))

    best_phases, best_value = starts[0], -math.inf
    for start in starts:
        phases, value = _coordinate_ascent(np.asarray(m), start.copy())
        if value > best_value:
            best_phases, best_value = phases, value
    return best_phases, best_value


def lbk_bound(
    rho: DensityState,
    observables: Sequence[Operator],
    theta: OrthoOperatorSet,
    k: int,
    phases: Union[Sequence[float], Literal["optimize"]] = "optimize",
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
    initial_phases: Optional[Sequence[float]] = None,
    tol: float = DEFAULT_TOL,
) -> BoundReport:
    """
    取前 k 個資訊算符的和形式下界

        Σ_m ΔA_m² ≥ X†(Σ_{j≤k} V_j)X − Σ_{m<n} 2Re(e^{i(θ_n−θ_m)}⟨Ǎ_m†Ǎ_n⟩)

    其中 X_m = e^{iθ_m}。k = r 時對任何相位皆為等式。

    Raises:
        IndexOutOfRange: k 不在 [0, r]
        InvalidParameters: 明確相位的個數與可觀測量數不符
    """
    if not 0 <= k <= theta.r:
        raise IndexOutOfRange(f"k 必須介於 0 與 r = {theta.r} 之間，收到 {k}")
    decomposition = uncertainty_equality(rho, observables, theta)
    d = np.asarray(decomposition.d_matrix)
    n = d.shape[0]
    m = np.asarray(decomposition.partial_sum(k)) - (d - np.diag(np.diag(d)))

    if isinstance(phases, str):
        if phases != "optimize":
            raise InvalidParameters(f"phases 必須是實數序列或 'optimize'，收到 {phases!r}")
        chosen, rhs = optimize_phases(m, restarts, seed, initial_phases)
    else:
        chosen = np.asarray(phases, dtype=np.float64)
        if chosen.shape != (n,):
            raise InvalidParameters(f"需要 {n} 個相位，收到 {chosen.size} 個")
        rhs = _phase_objective(m, np.exp(1j * chosen))

    components: dict[str, Component] = {"k": k, "r": theta.r}
    for i, value in enumerate(chosen, 1):
        components[f"theta_{i}"] = float(value)
    return inequality(f"LB_{k}", float(np.trace(d).real), rhs, tol, components)


def report_phases(report: BoundReport) -> List[float]:
    """從 lbk_bound 的報告取回相位，供下一個 k 暖啟動"""
    phases = []
    i = 1
    while f"theta_{i}" in report.components:
        phases.append(float(report.components[f"theta_{i}"]))
        i += 1
    return phases


def determinant_bound(
    rho: DensityState,
    observables: Sequence[Operator],
    o: Optional[Operator] = None,
    tol: float = DEFAULT_TOL,
) -> BoundReport:
    """
    乘積形式 Det(D − V) ≥ 0；o 省略時 V = 0。

    兩個可觀測量時 Det(D) 恰為 Schrödinger 關係的餘裕。
    """
    d = np.asarray(gram_matrix(rho, observables).d_matrix)
    v = np.asarray(v_matrix(rho, observables, o)) if o is not None else np.zeros_like(d)
    det = np.linalg.det(d - v)
    return inequality("determinant", float(det.real), 0.0, tol, {"determinant": complex(det)})


def quadratic_form_bound(
    rho: DensityState,
    observables: Sequence[Operator],
    x: Sequence[complex],
    o: Optional[Operator] = None,
    tol: float = DEFAULT_TOL,
) -> BoundReport:
    """
    和形式 X†(D − V)X ≥ 0，寫成
    Σ|x_m|²ΔA_m² ≥ X†VX − Σ_{m≠n} conj(x_m)x_n D(m,n)。
    """
    d = np.asarray(gram_matrix(rho, observables).d_matrix)
    xv = np.asarray(x, dtype=np.complex128).reshape(-1)
    if xv.shape != (d.shape[0],):
        raise InvalidParameters(f"X 的長度必須是 {d.shape[0]}")
    v = np.asarray(v_matrix(rho, observables, o)) if o is not None else np.zeros_like(d)
    diagonal = np.diag(np.diag(d))
    lhs = float(np.real(np.vdot(xv, diagonal @ xv)))
    rhs = float(np.real(np.vdot(xv, v @ xv) - np.vdot(xv, (d - diagonal) @ xv)))
    return inequality("quadratic_form", lhs, rhs, tol)
