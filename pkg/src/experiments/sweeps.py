"""
圖表實驗模組
重現自旋 1 系統的兩組掃描：α 掃描（LB_SUR / LB_ort / LB_op / LB_ran）與 β 掃描（LB_0..LB_3）
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from core.errors import InvalidParameters
from engines.bounds import eq8_bound, maccone_pati_bound, optimal_information_operator, sur_bound
from engines.gram import DEFAULT_RESTARTS, lbk_bound, report_phases, schmidt_orthogonalize
from engines.moments import variance
from engines.report import DEFAULT_TOL
from model.operators import spin_operators
from model.sampling import sample_operator, substream_seed
from model.states import DensityState, diagonal_state, pure_state
from utils import __version__

logger = logging.getLogger(__name__)

DEFAULT_STEPS = 201
DEFAULT_RANDOM_TRIALS = 200

# 固定的驗收容差；其餘比較都用呼叫端傳入的 tol
SUR_TRIVIAL_TOL = 1e-12
LB_K_TOL = 1e-8
MONOTONE_TOL = 1e-12

Progress = Optional[Callable[[int, int], None]]


@dataclass
class ScatterPoint:
    alpha: float
    value: float
    trial: int
    seed: int
    sum_variances: float
    tol: float = DEFAULT_TOL

    @property
    def ok(self) -> bool:
        return self.value <= self.sum_variances + self.tol


@dataclass
class SweepResult:
    """
    一次掃描的結果。curves 的每條曲線長度都等於 grid；
    verdicts 為每列自我檢查的結果，scatter 只有 α 掃描使用；
    checks 為不屬於任何一列的額外檢查（例如 β = π/4 的 LB_0）。
    """

    parameter_name: str
    grid: List[float]
    curves: Dict[str, List[float]]
    verdicts: List[bool]
    metadata: Dict[str, Any]
    scatter: List[ScatterPoint] = field(default_factory=list)
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    @property
    def failures(self) -> int:
        return (
            self.verdicts.count(False)
            + sum(not p.ok for p in self.scatter)
            + sum(not ok for ok in self.checks.values())
        )


def alpha_state(alpha: float) -> DensityState:
    """ρ(α) = cos²α|1⟩⟨1| + sin²α|−1⟩⟨−1|"""
    return diagonal_state([math.cos(alpha) ** 2, 0.0, math.sin(alpha) ** 2])


def beta_state(beta: float) -> DensityState:
    """|ψ(β)⟩ = cos β|1⟩ + sin β|−1⟩"""
    return pure_state([math.cos(beta), 0.0, math.sin(beta)])


def _grid(steps: int) -> np.ndarray:
    if steps < 2:
        raise InvalidParameters(f"steps 必須至少為 2，收到 {steps}")
    return np.linspace(0.0, math.pi, steps)


def run_fig1(
    steps: int = DEFAULT_STEPS,
    random_trials: int = DEFAULT_RANDOM_TRIALS,
    seed: int = 0,
    progress: Progress = None,
    tol: float = DEFAULT_TOL,
) -> SweepResult:
    """
    自旋 1 系統、A = J_x、B = J_z 的 α 掃描。

    每列計算 ΔJx² + ΔJz²、LB_SUR、LB_ort（ψ⊥ = |0⟩、sign=best）與 LB_op（R = J̌x + J̌z）；
    另外以 random_trials 組隨機 (α, R, S) 產生 LB_ran 散點，R、S 為 Ginibre 算符。
    LB_op 與 1/2 + sin²2α 的比對、LB_ort 與 LB_ran 不超過變異數和，都以 tol 判定。
    """
    if random_trials < 0:
        raise InvalidParameters(f"random_trials 不可為負，收到 {random_trials}")
    grid = _grid(steps)
    jx, _, jz = spin_operators(2)
    perp = [0.0, 1.0, 0.0]

    curves: Dict[str, List[float]] = {"sum_variances": [], "LB_SUR": [], "LB_ort": [], "LB_op": []}
    verdicts: List[bool] = []
    for i, alpha in enumerate(grid):
        rho = alpha_state(alpha)
        total = variance(rho, jx) + variance(rho, jz)
        lb_sur = sur_bound(rho, jx, jz).rhs
        lb_ort = maccone_pati_bound(rho, jx, jz, perp, "best").rhs
        lb_op = eq8_bound(rho, jx, jz, optimal_information_operator(rho, jx, jz)).rhs
        for label, value in zip(curves, (total, lb_sur, lb_ort, lb_op)):
            curves[label].append(value)
        verdicts.append(
            lb_sur <= SUR_TRIVIAL_TOL
            and abs(lb_op - (0.5 + math.sin(2 * alpha) ** 2)) <= tol
            and lb_ort <= total + tol
        )
        if progress:
            progress(i + 1, steps + random_trials)

    scatter: List[ScatterPoint] = []
    for k in range(random_trials):
        trial_seed = substream_seed(seed, k)
        alpha = float(np.random.default_rng(trial_seed).uniform(0.0, math.pi))
        rho = alpha_state(alpha)
        r_op = sample_operator(substream_seed(trial_seed, 0), 3)
        s_op = sample_operator(substream_seed(trial_seed, 1), 3)
        value = eq8_bound(rho, jx, jz, r_op, s_op).rhs
        total = variance(rho, jx) + variance(rho, jz)
        scatter.append(ScatterPoint(alpha, value, k, trial_seed, total, tol))
        if progress:
            progress(steps + k + 1, steps + random_trials)

    result = SweepResult(
        parameter_name="alpha",
        grid=[float(a) for a in grid],
        curves=curves,
        verdicts=verdicts,
        metadata={
            "experiment": "fig1",
            "steps": steps,
            "random_trials": random_trials,
            "seed": seed,
            "tolerances": {"satisfied": tol, "LB_SUR": SUR_TRIVIAL_TOL},
            "version": __version__,
        },
        scatter=scatter,
    )
    logger.info("fig1: %d 列、%d 個散點，失敗 %d", steps, random_trials, result.failures)
    return result


def _fig2_row(beta: float, restarts: int, seed: int, observables) -> Tuple[List[float], float]:
    rho = beta_state(beta)
    theta = schmidt_orthogonalize(rho)
    values: List[float] = []
    warm: Optional[List[float]] = None
    for k in range(4):
        report = lbk_bound(rho, observables, theta, min(k, theta.r), "optimize", restarts, seed, warm)
        values.append(report.rhs)
        warm = report_phases(report)
    return values, report.lhs


def run_fig2(
    steps: int = DEFAULT_STEPS,
    restarts: int = DEFAULT_RESTARTS,
    seed: int = 0,
    progress: Progress = None,
    tol: float = DEFAULT_TOL,
) -> SweepResult:
    """
    純態 |ψ(β)⟩、可觀測量 (Jx, Jy, Jz) 的 β 掃描。

    每列以矩陣單位基底建構 Θ，計算相位最佳化後的 LB_0..LB_3 與 ΔJx² + ΔJy² + ΔJz²。
    LB_K 以 LB_{K−1} 的相位暖啟動，因此整列單調不減。
    另外在 β = π/4 檢查 LB_0 ≤ 1e-8，不論該點是否在網格上。
    """
    if restarts < 0:
        raise InvalidParameters(f"restarts 不可為負，收到 {restarts}")
    grid = _grid(steps)
    observables = list(spin_operators(2))

    curves: Dict[str, List[float]] = {f"LB_{k}": [] for k in range(4)}
    curves["sum_variances"] = []
    verdicts: List[bool] = []
    for i, beta in enumerate(grid):
        values, total = _fig2_row(beta, restarts, substream_seed(seed, i), observables)
        for k, value in enumerate(values):
            curves[f"LB_{k}"].append(value)
        curves["sum_variances"].append(total)
        monotone = all(values[k] <= values[k + 1] + MONOTONE_TOL for k in range(3))
        verdicts.append(
            monotone
            and values[3] <= total + tol
            and abs(values[3] - (1 + math.sin(2 * beta) ** 2)) <= LB_K_TOL
        )
        if progress:
            progress(i + 1, steps)

    anchor, _ = _fig2_row(math.pi / 4, restarts, substream_seed(seed, steps), observables)
    result = SweepResult(
        parameter_name="beta",
        grid=[float(b) for b in grid],
        curves=curves,
        verdicts=verdicts,
        metadata={
            "experiment": "fig2",
            "steps": steps,
            "restarts": restarts,
            "seed": seed,
            "tolerances": {"satisfied": tol, "LB_K": LB_K_TOL, "monotone": MONOTONE_TOL},
            "LB_0_at_pi_over_4": anchor[0],
            "version": __version__,
        },
        checks={"LB_0_at_pi_over_4": anchor[0] <= LB_K_TOL},
    )
    logger.info("fig2: %d 列，失敗 %d", steps, result.failures)
    return result
