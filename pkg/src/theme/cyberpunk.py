from rich.console import Console
from rich.theme import Theme

# 終端機配色：綠色為主，判定與數值各有樣式
cyberpunk_theme = Theme(
    {
        "success": "bright_green",
        "error": "bright_red",
        "warning": "bright_yellow",
        "title": "bright_green on black",
        "verdict.pass": "bold bright_green",
        "verdict.fail": "bold bright_red",
        "metric": "bright_cyan",
        "value": "bright_white",
        "table.border": "bright_green",
        "logging.level.warning": "bright_yellow",
        "logging.level.error": "bright_red",
    }
)

# stdout：表格、進度與結果摘要
console = Console(theme=cyberpunk_theme, highlight=False)

# stderr：錯誤與日誌，bound 的 JSON 輸出因此不受干擾
err_console = Console(theme=cyberpunk_theme, highlight=False, stderr=True)
