from pathlib import Path
from typing import List, Optional

import typer
from rich.box import ASCII
from rich.table import Table

from core.codec import write_matrix
from core.errors import UncertaintyKitError
from engines.gram import DEFAULT_RESTARTS, lbk_bound, report_phases, schmidt_orthogonalize, uncertainty_equality
from engines.moments import moments
from experiments.writers import write_gram_json
from handlers.errors import fail, finish
from model.operators import load_operator
from model.states import load_state
from theme.cyberpunk import console
from utils import __version__
from utils.formatter import format_value, format_verdict, generate_header
from utils.settings import hermitian_tolerance, rank_tolerance, satisfied_tolerance


def gram(
    state: Path = typer.Option(..., "--state", help="密度矩陣 JSON"),
    ops: List[Path] = typer.Option(..., "--op", help="可觀測量 JSON，可重複指定"),
    basis: Optional[List[Path]] = typer.Option(None, "--basis", help="自訂算符基底，省略時使用矩陣單位"),
    restarts: int = typer.Option(DEFAULT_RESTARTS, "--restarts", "-r", help="相位最佳化的隨機重啟次數"),
    seed: int = typer.Option(0, "--seed", "-s", min=0),
    json_path: Optional[Path] = typer.Option(None, "--json", help="寫出 Θ、D、V_k 與 LB_k"),
    d_out: Optional[Path] = typer.Option(None, "--d-out", help="將 D 寫成矩陣 JSON"),
    tol: Optional[float] = typer.Option(None, "--tol", help="satisfied 容差（預設取自 UR_KIT_TOL）"),
):
    """
    建構資訊算符集合 Θ，計算 D = ΣV_k 的分解與 k = 0..r 的和形式下界。
    """
    console.print(f"[bright_green]{generate_header('gram', 'small')}[/bright_green]")
    console.print("[bright_green]" + "-" * 70 + "[/bright_green]\n")

    try:
        if tol is None:
            tol = satisfied_tolerance()
        rho = load_state(state, hermitian_tolerance(), rank_tolerance())
        observables = [load_operator(path) for path in ops]
        basis_ops = [load_operator(path) for path in basis] if basis else None
        with console.status("[bright_green]>>> 正在建構 Θ...[/bright_green]", spinner="dots") as status:
            theta = schmidt_orthogonalize(rho, basis_ops)
            decomposition = uncertainty_equality(rho, observables, theta)
            reports, warm = [], None
            for k in range(theta.r + 1):
                status.update(f"[bright_green]>>> LB_{k} / r = {theta.r}...[/bright_green]")
                report = lbk_bound(rho, observables, theta, k, "optimize", restarts, seed, warm, tol)
                reports.append(report)
                warm = report_phases(report)
        if d_out:
            write_matrix(d_out, decomposition.d_matrix)
        if json_path:
            write_gram_json(
                {
                    "state": rho.describe(),
                    "observables": [o.label for o in observables],
                    "moments": {o.label: moments(rho, o).to_dict() for o in observables},
                    "theta": theta.to_dict(),
                    "decomposition": decomposition.to_dict(),
                    "lower_bounds": [r.to_dict() for r in reports],
                    "version": __version__,
                },
                json_path,
            )
    except UncertaintyKitError as e:
        fail(e)

    console.print(f"[bright_green]>>> {rho.describe()}，r = {theta.r}（{theta.source}）[/bright_green]")
    console.print(f">>> 閉合殘差 [value]{decomposition.closure_residual:.3e}[/value]")

    table = Table(title="LB_k", box=ASCII, border_style="bright_green")
    table.add_column("k", justify="right", style="metric")
    table.add_column("LB_k", justify="right", style="value")
    table.add_column("slack", justify="right", style="value")
    table.add_column("結果", justify="center")
    for report in reports:
        table.add_row(str(report.components["k"]), format_value(report.rhs), format_value(report.slack),
                      format_verdict(report.satisfied))
    console.print(table)

    for path in (d_out, json_path):
        if path:
            console.print(f"[bright_green]>>> 已寫出 {path}[/bright_green]")
    console.print("[bright_green]" + "-" * 70 + "[/bright_green]")
    # 矩陣單位基底必定閉合；自訂基底只要求各 LB_k 不超過變異數和
    closed = decomposition.closed or theta.source == "custom"
    finish(closed and all(report.satisfied for report in reports))
