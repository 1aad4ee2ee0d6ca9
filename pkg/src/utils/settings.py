"""
設定處理模組
從 .env 與環境變數讀取容差與日誌等級，並提供寫回 .env 的功能
"""

import os
from typing import Dict

from dotenv import load_dotenv, set_key

from core.errors import InvalidParameters

# 載入環境變數
load_dotenv()

DEFAULTS: Dict[str, str] = {
    "UR_KIT_TOL": "1e-9",
    "UR_KIT_HERMITIAN_TOL": "1e-10",
    "UR_KIT_RANK_TOL": "1e-9",
    "UR_KIT_LOG_LEVEL": "WARNING",
}


def _float_setting(key: str) -> float:
    raw = os.environ.get(key, DEFAULTS[key])
    try:
        return float(raw)
    except ValueError as e:
        raise InvalidParameters(f"{key} 必須是數字，收到 {raw!r}") from e


# 以下存取函數每次呼叫都重新讀取環境變數，錯誤值只會在指令內部報錯
def satisfied_tolerance() -> float:
    """全域的 satisfied 容差 (UR_KIT_TOL)"""
    return _float_setting("UR_KIT_TOL")


def hermitian_tolerance() -> float:
    return _float_setting("UR_KIT_HERMITIAN_TOL")


def rank_tolerance() -> float:
    return _float_setting("UR_KIT_RANK_TOL")


def log_level() -> str:
    level = os.environ.get("UR_KIT_LOG_LEVEL", DEFAULTS["UR_KIT_LOG_LEVEL"]).upper()
    return level if level in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL") else "WARNING"


def effective_settings() -> Dict[str, str]:
    return {key: os.environ.get(key, default) for key, default in DEFAULTS.items()}


def update_setting(key: str, value: str) -> bool:
    """
    更新 .env 文件中的設定值

    Args:
        key: 設定名稱，必須是 DEFAULTS 中的鍵
        value: 新的值

    Returns:
        bool: 是否成功更新 .env 文件
    """
    if key not in DEFAULTS:
        raise InvalidParameters(f"未知的設定: {key}（可用: {', '.join(DEFAULTS)}）")
    if key != "UR_KIT_LOG_LEVEL":
        try:
            float(value)
        except ValueError as e:
            raise InvalidParameters(f"{key} 必須是數字，收到 {value!r}") from e
    try:
        env_path = os.path.join(os.getcwd(), ".env")
        set_key(env_path, key, value)
        os.environ[key] = value
        return True
    except OSError:
        return False
