from enum import Enum
from typing import Optional

import numpy as np
import typer
from rich.box import ASCII
from rich.table import Table

from core.errors import UncertaintyKitError
from engines.bounds import demo_boson, demo_nonhermitian, two_mode_state
from engines.report import BoundReport
from handlers.errors import fail
from model.states import pure_state
from theme.cyberpunk import console
from utils.formatter import format_value, format_verdict, generate_header
from utils.settings import satisfied_tolerance


class DemoName(str, Enum):
    nonhermitian = "nonhermitian"
    boson = "boson"


def _print_report(report: BoundReport) -> None:
    table = Table(title=report.name, box=ASCII, border_style="bright_green")
    table.add_column("項目", style="metric")
    table.add_column("值", justify="right", style="value")
    table.add_row("lhs", format_value(report.lhs))
    table.add_row("rhs", format_value(report.rhs))
    table.add_row("slack", format_value(report.slack))
    for key, value in report.components.items():
        table.add_row(key, format_value(value))
    console.print(table)


def demo(
    name: DemoName = typer.Argument(..., help="nonhermitian 或 boson"),
    cutoff: int = typer.Option(3, "--cutoff", "-c", help="boson 示範的 Fock 截斷"),
    vacuum: bool = typer.Option(False, "--vacuum", help="boson 示範改用 |00⟩"),
    tol: Optional[float] = typer.Option(None, "--tol", help="satisfied 容差（預設取自 UR_KIT_TOL）"),
):
    """
    執行內建示範：σ± 上普通 SUR 的失效，或雙模玻色子的能量下界。

    示範本身就是為了顯示不等式可能被違反，因此結果不影響結束碼。
    """
    console.print(f"[bright_green]{generate_header('demo', 'small')}[/bright_green]")
    console.print("[bright_green]" + "-" * 70 + "[/bright_green]\n")

    try:
        if tol is None:
            tol = satisfied_tolerance()
        if name == DemoName.nonhermitian:
            console.print("[bright_green]>>> 態 |+⟩ = (|0⟩ + |1⟩)/√2，A = σ+，B = σ−[/bright_green]")
            report = demo_nonhermitian(pure_state(np.array([1.0, 1.0]) / np.sqrt(2)), tol)
        else:
            amplitudes = {(0, 0): 1.0} if vacuum else {(0, 1): 1 / np.sqrt(2), (1, 0): 1 / np.sqrt(2)}
            label = "|00⟩" if vacuum else "(|01⟩ + |10⟩)/√2"
            console.print(f"[bright_green]>>> 態 {label}，截斷 {cutoff}[/bright_green]")
            report = demo_boson(two_mode_state(cutoff, amplitudes), cutoff, tol)
    except UncertaintyKitError as e:
        fail(e)

    _print_report(report)
    console.print(f">>> 不等式: {format_verdict(report.satisfied)}")
    console.print("[bright_green]" + "-" * 70 + "[/bright_green]")
