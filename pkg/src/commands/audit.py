from pathlib import Path
from typing import Optional

import typer
from rich.box import ASCII
from rich.table import Table

from core.errors import UncertaintyKitError
from experiments.audit import run_audit
from experiments.writers import write_audit_json
from handlers.errors import fail, finish
from model.states import load_state
from theme.cyberpunk import console
from utils import __version__
from utils.formatter import format_verdict, generate_header
from utils.settings import hermitian_tolerance, rank_tolerance, satisfied_tolerance


def audit(
    dim: int = typer.Option(3, "--dim", "-d", help="希爾伯特空間維度 (2..8)"),
    trials: int = typer.Option(1000, "--trials", "-t"),
    seed: int = typer.Option(0, "--seed", "-s", min=0),
    json_path: Optional[Path] = typer.Option(None, "--json", help="將稽核結果寫成 JSON"),
    state: Optional[Path] = typer.Option(None, "--state", help="以此密度矩陣取代隨機態"),
    tol: Optional[float] = typer.Option(None, "--tol", help="satisfied 容差（預設取自 UR_KIT_TOL）"),
):
    """
    在隨機系綜上稽核所有等式與不等式。
    """
    console.print(f"[bright_green]{generate_header('audit', 'small')}[/bright_green]")
    console.print("[bright_green]" + "-" * 70 + "[/bright_green]\n")

    try:
        if tol is None:
            tol = satisfied_tolerance()
        fixed_state = load_state(state, hermitian_tolerance(), rank_tolerance()) if state else None
        if fixed_state is not None:
            console.print(f"[bright_green]>>> 使用固定的態: {fixed_state.describe()}[/bright_green]")
        with console.status("[bright_green]>>> 正在執行性質稽核...[/bright_green]", spinner="dots") as status:

            def progress(done: int, total: int) -> None:
                status.update(f"[bright_green]>>> 試驗 {done}/{total}...[/bright_green]")

            reports = run_audit(dim, trials, seed, fixed_state, progress, tol)
        if json_path:
            metadata = {
                "dim": fixed_state.dim if fixed_state else dim,
                "trials": trials,
                "seed": seed,
                "tol": tol,
                "state": str(state) if state else None,
                "version": __version__,
            }
            write_audit_json(reports, json_path, metadata)
    except UncertaintyKitError as e:
        fail(e)

    table = Table(title="稽核結果", box=ASCII, border_style="bright_green")
    table.add_column("性質", style="metric")
    table.add_column("試驗", justify="right")
    table.add_column("失敗", justify="right")
    table.add_column("最差偏差", justify="right", style="value")
    table.add_column("結果", justify="center")
    for report in reports:
        table.add_row(
            report.property,
            str(report.trials),
            str(report.failures),
            f"{report.worst_violation:.3e}",
            format_verdict(report.failures == 0),
        )
    console.print(table)
    if json_path:
        console.print(f"[bright_green]>>> 已寫出 {json_path}[/bright_green]")
    console.print("[bright_green]" + "-" * 70 + "[/bright_green]")
    finish(all(report.failures == 0 for report in reports))
