"""Outcome record for a single identity check."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

__all__ = ["VerifyReport"]


@dataclass(frozen=True)
class VerifyReport:
    """``passed`` is derived: it holds exactly when ``metric <= threshold``.

    Exact checks use ``metric = 0`` on success and otherwise the largest
    offending coefficient (the polynomial itself goes into ``parameters``).
    """

    identity_id: str
    parameters: dict[str, Any]
    metric: float
    threshold: float
    runtime_ms: int = 0
    passed: bool = field(init=False)

    def __post_init__(self):
        metric = float(self.metric)
        object.__setattr__(self, "metric", metric)
        object.__setattr__(self, "threshold", float(self.threshold))
        object.__setattr__(self, "passed", bool(not math.isnan(metric) and metric <= self.threshold))

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.identity_id,
            "params": self.parameters,
            "metric": self.metric,
            "threshold": self.threshold,
            "passed": self.passed,
            "runtime_ms": int(self.runtime_ms),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> VerifyReport:
        report = cls(data["id"], dict(data["params"]), data["metric"], data["threshold"],
                     int(data.get("runtime_ms", 0)))
        if "passed" in data and bool(data["passed"]) != report.passed:
            raise ValueError("inconsistent report: passed does not match metric <= threshold")
        return report
