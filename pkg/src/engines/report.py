"""
不確定關係報告
每一個界的評估都回傳 BoundReport；欄位名稱是 CLI JSON 與 CSV 表頭的一部分
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Union

import numpy as np

Component = Union[float, complex, str, bool, None]

DEFAULT_TOL = 1e-9
EQUALITY_TOL = 1e-9


@dataclass(frozen=True)
class BoundReport:
    """
    單一不等式（或等式）的評估結果。

    不等式：satisfied ⇔ slack ≥ −tol。
    等式（kind = "equality"）：satisfied ⇔ |slack| ≤ tol · max(1, |lhs|)。
    """

    name: str
    lhs: float
    rhs: float
    slack: float
    satisfied: bool
    tol: float
    kind: str = "inequality"
    components: Dict[str, Component] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "kind": self.kind,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "satisfied": self.satisfied,
            "tol": self.tol,
            "components": {k: _jsonable(v) for k, v in self.components.items()},
        }


def _jsonable(value: Component) -> Any:
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.floating):
        return float(value)
    return value


def inequality(
    name: str,
    lhs: float,
    rhs: float,
    tol: float = DEFAULT_TOL,
    components: Optional[Dict[str, Component]] = None,
) -> BoundReport:
    slack = float(lhs) - float(rhs)
    return BoundReport(
        name=name,
        lhs=float(lhs),
        rhs=float(rhs),
        slack=slack,
        satisfied=slack >= -tol,
        tol=tol,
        components=dict(components or {}),
    )


def equality(
    name: str,
    lhs: float,
    rhs: float,
    tol: float = EQUALITY_TOL,
    components: Optional[Dict[str, Component]] = None,
) -> BoundReport:
    slack = float(lhs) - float(rhs)
    residual = abs(slack)
    parts = dict(components or {})
    parts["residual"] = residual
    parts["relative_residual"] = residual / max(1.0, abs(float(lhs)))
    return BoundReport(
        name=name,
        lhs=float(lhs),
        rhs=float(rhs),
        slack=slack,
        satisfied=residual <= tol * max(1.0, abs(float(lhs))),
        tol=tol,
        kind="equality",
        components=parts,
    )
