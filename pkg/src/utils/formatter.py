import pyfiglet


def format_value(value) -> str:
    """
    將報告中的數值格式化為表格顯示用的字串。
    """
    if value is None:
        return "—"
    if isinstance(value, bool):
        return "是" if value else "否"
    if isinstance(value, complex):
        return f"{value.real:.6g}{value.imag:+.6g}i"
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def format_verdict(ok: bool) -> str:
    return "[verdict.pass]通過[/verdict.pass]" if ok else "[verdict.fail]失敗[/verdict.fail]"


def generate_header(text: str, font: str = "slant") -> str:
    """
    產生 ASCII 標題字。
    """
    try:
        return pyfiglet.figlet_format(text, font=font)
    except Exception:
        return pyfiglet.figlet_format(text)
