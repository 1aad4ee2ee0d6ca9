"""
錯誤類別模組
所有函式庫錯誤都繼承自 UncertaintyKitError，並附帶 CLI 使用的固定結束碼
輸入檔案與參數錯誤為 2；4 與 5 留給計算前提與數值不一致
"""


class UncertaintyKitError(ValueError):
    """函式庫錯誤的基底類別"""

    exit_code = 4


class InvalidParameters(UncertaintyKitError):
    exit_code = 2


class FixtureNotFound(UncertaintyKitError):
    exit_code = 2


class MatrixParseError(UncertaintyKitError):
    exit_code = 2


class InvalidState(UncertaintyKitError):
    """密度矩陣不滿足不變量（厄米、半正定、跡為一）"""

    exit_code = 2


class DimensionMismatch(UncertaintyKitError):
    pass


class NotSquare(UncertaintyKitError):
    pass


class NotHermitian(UncertaintyKitError):
    pass


class ZeroVector(UncertaintyKitError):
    pass


class InvalidSpin(UncertaintyKitError):
    pass


class InvalidCutoff(UncertaintyKitError):
    pass


class InvalidSpec(UncertaintyKitError):
    pass


class NotOrthogonal(UncertaintyKitError):
    pass


class DegenerateInformationOperator(UncertaintyKitError):
    """資訊算符的二階原點矩 ⟨O†O⟩ 為零，無法提供任何資訊"""


class EmptyBasis(UncertaintyKitError):
    pass


class IndexOutOfRange(UncertaintyKitError):
    pass


class NumericalInconsistency(UncertaintyKitError):
    """理論上應相等的兩個量在數值上不一致"""

    exit_code = 5
