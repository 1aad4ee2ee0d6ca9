"""命令共用的錯誤處理"""

from typing import NoReturn

import typer

from core.errors import UncertaintyKitError
from theme.cyberpunk import err_console

EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_USAGE = 2


def fail(err: UncertaintyKitError) -> NoReturn:
    """印出錯誤並以該錯誤類別的結束碼離開"""
    err_console.print(f"[bright_red]>>> 錯誤 ({type(err).__name__}): {err}[/bright_red]")
    raise typer.Exit(code=err.exit_code)


def usage_error(message: str) -> NoReturn:
    err_console.print(f"[bright_red]>>> 用法錯誤: {message}[/bright_red]")
    raise typer.Exit(code=EXIT_USAGE)


def finish(ok: bool) -> None:
    """全部通過時正常結束，否則以結束碼 1 表示性質失敗"""
    if not ok:
        err_console.print("[bright_yellow]>>> 注意: 有性質或不等式未通過[/bright_yellow]")
        raise typer.Exit(code=EXIT_PROPERTY_FAILURE)
