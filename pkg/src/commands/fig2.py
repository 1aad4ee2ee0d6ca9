from pathlib import Path
from typing import Optional

import typer
from rich.box import ASCII
from rich.table import Table

from core.errors import UncertaintyKitError
from engines.gram import DEFAULT_RESTARTS
from experiments.sweeps import DEFAULT_STEPS, run_fig2
from experiments.writers import write_svg, write_sweep_csv
from handlers.errors import fail, finish
from theme.cyberpunk import console
from utils.formatter import format_value, format_verdict, generate_header
from utils.settings import satisfied_tolerance


def fig2(
    steps: int = typer.Option(DEFAULT_STEPS, "--steps", "-n", help="β 網格點數"),
    restarts: int = typer.Option(DEFAULT_RESTARTS, "--restarts", "-r", help="相位最佳化的隨機重啟次數"),
    seed: int = typer.Option(0, "--seed", "-s", min=0),
    out: Path = typer.Option(Path("fig2.csv"), "--out", "-o"),
    svg: Optional[Path] = typer.Option(None, "--svg"),
    tol: Optional[float] = typer.Option(None, "--tol", help="satisfied 容差（預設取自 UR_KIT_TOL）"),
):
    """
    重現純態 |ψ(β)⟩ 上 LB_0..LB_3 隨資訊算符數增加而收緊的 β 掃描。
    """
    console.print(f"[bright_green]{generate_header('fig 2', 'small')}[/bright_green]")
    console.print("[bright_green]" + "-" * 70 + "[/bright_green]\n")

    try:
        if tol is None:
            tol = satisfied_tolerance()
        with console.status("[bright_green]>>> 正在計算 β 掃描...[/bright_green]", spinner="dots") as status:

            def progress(done: int, total: int) -> None:
                status.update(f"[bright_green]>>> 進度 {done}/{total}...[/bright_green]")

            result = run_fig2(steps, restarts, seed, progress, tol)
        written = write_sweep_csv(result, out)
        if svg:
            written.append(write_svg(result, svg, "spin-1, |ψ(β)⟩, Jx + Jy + Jz"))
    except UncertaintyKitError as e:
        fail(e)

    table = Table(title="β 掃描摘要", box=ASCII, border_style="bright_green")
    table.add_column("曲線", style="metric")
    table.add_column("最小值", style="value")
    table.add_column("最大值", style="value")
    for label, curve in result.curves.items():
        table.add_row(label, format_value(min(curve)), format_value(max(curve)))
    console.print(table)

    for path in written:
        console.print(f"[bright_green]>>> 已寫出 {path}[/bright_green]")
    console.print(f">>> 逐列自我檢查: {format_verdict(result.ok)}（失敗 {result.failures}）")
    console.print("[bright_green]" + "-" * 70 + "[/bright_green]")
    finish(result.ok)
