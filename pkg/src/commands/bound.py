import json
from enum import Enum
from pathlib import Path
from typing import Optional

import numpy as np
import typer

from core.codec import read_matrix
from core.errors import UncertaintyKitError
from engines.bounds import eq8_bound, info_operator_bound, maccone_pati_bound, sur_bound, unified_equality
from engines.moments import moments
from handlers.errors import fail, finish, usage_error
from model.operators import load_operator
from model.states import load_state
from utils.settings import hermitian_tolerance, rank_tolerance, satisfied_tolerance


class BoundKind(str, Enum):
    sur = "sur"
    mp = "mp"
    unified = "unified"
    info = "info"
    eq8 = "eq8"


class SignChoice(str, Enum):
    plus = "plus"
    minus = "minus"
    best = "best"


def bound(
    kind: BoundKind = typer.Option(..., "--kind", "-k"),
    state: Path = typer.Option(..., "--state", help="密度矩陣 JSON"),
    op_a: Path = typer.Option(..., "--op-a", help="算符 A（info 時為 F）"),
    op_b: Optional[Path] = typer.Option(None, "--op-b", help="算符 B"),
    info_r: Optional[Path] = typer.Option(None, "--info-r", help="資訊算符 R（info 時為 O）"),
    info_s: Optional[Path] = typer.Option(None, "--info-s", help="資訊算符 S"),
    psi_perp: Optional[Path] = typer.Option(None, "--psi-perp", help="與 ρ 支撐正交的態向量 (d×1)"),
    sign: SignChoice = typer.Option(SignChoice.best, "--sign"),
    tol: Optional[float] = typer.Option(None, "--tol", help="satisfied 容差（預設取自 UR_KIT_TOL）"),
):
    """
    在 JSON 檔案提供的態與算符上計算單一不確定關係，以 JSON 印出完整報告。
    """
    # 先檢查參數組合，用法錯誤時不做任何計算
    if kind in (BoundKind.sur, BoundKind.mp, BoundKind.unified, BoundKind.eq8) and op_b is None:
        usage_error(f"--kind {kind.value} 需要 --op-b")
    if kind == BoundKind.mp and psi_perp is None:
        usage_error("--kind mp 需要 --psi-perp")
    if kind == BoundKind.info and info_r is None:
        usage_error("--kind info 需要 --info-r 作為資訊算符")
    if kind == BoundKind.eq8 and info_r is None and info_s is None:
        usage_error("--kind eq8 至少需要 --info-r 或 --info-s 其中之一")

    try:
        if tol is None:
            tol = satisfied_tolerance()
        rho = load_state(state, hermitian_tolerance(), rank_tolerance())
        a = load_operator(op_a, "A")
        b = load_operator(op_b, "B") if op_b else None
        if kind == BoundKind.sur:
            report = sur_bound(rho, a, b, tol)
        elif kind == BoundKind.mp:
            perp = np.asarray(read_matrix(psi_perp)).reshape(-1)
            report = maccone_pati_bound(rho, a, b, perp, sign.value, tol)
        elif kind == BoundKind.unified:
            report = unified_equality(rho, a, b)
        elif kind == BoundKind.info:
            b = load_operator(info_r, "O")
            report = info_operator_bound(rho, a, b, tol)
        else:
            r_op = load_operator(info_r, "R") if info_r else None
            s_op = load_operator(info_s, "S") if info_s else None
            if r_op is None:
                r_op, s_op = s_op, None
            report = eq8_bound(rho, a, b, r_op, s_op, tol)
        payload = report.to_dict()
        # 兩個輸入算符在 ρ 上的一階與二階矩
        payload["moments"] = {op.label: moments(rho, op).to_dict() for op in (a, b) if op is not None}
    except UncertaintyKitError as e:
        fail(e)

    typer.echo(json.dumps(payload, indent=2, ensure_ascii=False))
    finish(report.satisfied)
