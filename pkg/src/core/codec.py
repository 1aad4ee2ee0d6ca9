"""
JSON 矩陣格式

全專案共用的格式：{"rows": int, "cols": int, "data": [[re, im], ...]}，以列優先排列。
"""

import json
from pathlib import Path
from typing import Any, Dict

import numpy as np

from core.errors import FixtureNotFound, MatrixParseError, UncertaintyKitError
from core.matrix import ComplexMatrix, as_matrix


def matrix_to_dict(m: ComplexMatrix) -> Dict[str, Any]:
    rows, cols = m.shape
    flat = np.asarray(m).reshape(-1)
    return {
        "rows": int(rows),
        "cols": int(cols),
        "data": [[float(z.real), float(z.imag)] for z in flat],
    }


def matrix_from_dict(obj: Any) -> ComplexMatrix:
    """
    從 JSON 物件解析矩陣。

    Raises:
        MatrixParseError: 欄位缺漏、型別錯誤或 data 長度不等於 rows × cols
    """
    if not isinstance(obj, dict):
        raise MatrixParseError("矩陣必須是 JSON 物件")
    try:
        rows, cols, data = obj["rows"], obj["cols"], obj["data"]
    except KeyError as e:
        raise MatrixParseError(f"缺少欄位 {e}") from e
    if not (isinstance(rows, int) and isinstance(cols, int)) or rows < 1 or cols < 1:
        raise MatrixParseError("rows 與 cols 必須是正整數")
    if not isinstance(data, list) or len(data) != rows * cols:
        length = len(data) if isinstance(data, list) else "?"
        raise MatrixParseError(f"data 長度 {length} 不等於 rows × cols = {rows * cols}")
    try:
        entries = [complex(float(re), float(im)) for re, im in data]
    except (TypeError, ValueError) as e:
        raise MatrixParseError(f"data 的每個元素必須是 [re, im]: {e}") from e
    try:
        return as_matrix(np.array(entries, dtype=np.complex128).reshape(rows, cols))
    except UncertaintyKitError as e:
        raise MatrixParseError(str(e)) from e


def dumps_matrix(m: ComplexMatrix) -> str:
    return json.dumps(matrix_to_dict(m))


def read_matrix(path: Path) -> ComplexMatrix:
    """讀取 JSON 矩陣檔案"""
    path = Path(path)
    if not path.is_file():
        raise FixtureNotFound(f"找不到檔案: {path}")
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise MatrixParseError(f"{path}: JSON 格式錯誤 ({e})") from e
    try:
        return matrix_from_dict(obj)
    except MatrixParseError as e:
        raise MatrixParseError(f"{path}: {e}") from e


def write_matrix(path: Path, m: ComplexMatrix) -> None:
    Path(path).write_text(dumps_matrix(m) + "\n", encoding="utf-8")
