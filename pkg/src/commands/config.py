from typing import Optional

import typer
from rich.box import ASCII
from rich.table import Table

from core.errors import UncertaintyKitError
from handlers.errors import fail, usage_error
from theme.cyberpunk import console
from utils.formatter import generate_header
from utils.settings import DEFAULTS, effective_settings, update_setting


def config(
    set_value: Optional[str] = typer.Option(None, "--set", help="以 KEY=VALUE 寫入 .env"),
):
    """
    顯示目前生效的設定，或更新 .env 中的設定值。
    """
    console.print(f"[bright_green]{generate_header('config', 'small')}[/bright_green]")
    console.print("[bright_green]" + "-" * 70 + "[/bright_green]\n")

    if set_value is not None:
        key, sep, value = set_value.partition("=")
        if not sep or not key.strip():
            usage_error(f"--set 需要 KEY=VALUE 格式，收到 {set_value!r}")
        try:
            updated = update_setting(key.strip(), value.strip())
        except UncertaintyKitError as e:
            fail(e)
        if updated:
            console.print(f"[bright_green]>>> 已更新 .env: {key.strip()}={value.strip()}[/bright_green]")
        else:
            console.print("[bright_yellow]>>> 無法寫入 .env 檔案[/bright_yellow]")

    table = Table(title="目前設定", box=ASCII, border_style="bright_green")
    table.add_column("設定", style="metric")
    table.add_column("值", style="value")
    table.add_column("預設值")
    for key, value in effective_settings().items():
        table.add_row(key, value, DEFAULTS[key])
    console.print(table)
    console.print("[bright_green]" + "-" * 70 + "[/bright_green]")
