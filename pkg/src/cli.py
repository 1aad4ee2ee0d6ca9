import logging

import typer
from rich.logging import RichHandler

from theme.cyberpunk import console, err_console
from utils.formatter import generate_header
from utils.settings import log_level

app = typer.Typer(
    help="統一不確定關係的數值工具：界的計算、性質稽核與圖表實驗", add_completion=False
)

logging.basicConfig(
    level=log_level(),
    format="%(message)s",
    handlers=[RichHandler(console=err_console, show_path=False)],
)

# 指令導入
from commands.fig1 import fig1
from commands.fig2 import fig2
from commands.audit import audit
from commands.bound import bound
from commands.demo import demo
from commands.gram import gram
from commands.config import config
from commands.version import version

app.command()(fig1)
app.command()(fig2)
app.command()(audit)
app.command()(bound)
app.command()(demo)
app.command()(gram)
app.command()(config)
app.command()(version)


@app.callback(invoke_without_command=True)
def main(ctx: typer.Context) -> None:
    """主程序回調函數"""
    if ctx.invoked_subcommand is None:
        console.print(f"[bright_green]{generate_header('ur-kit', 'small')}[/bright_green]")
        typer.echo(ctx.get_help())


if __name__ == "__main__":
    app()
