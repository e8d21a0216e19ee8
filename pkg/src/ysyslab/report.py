from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    """Outcome of one verification: a pass flag, summary data and failure witnesses."""

    name: str
    passed: bool
    data: dict[str, Any] = field(default_factory=dict)
    witnesses: list[Any] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        out = {"check": self.name, "passed": self.passed}
        out.update(self.data)
        out["witnesses"] = self.witnesses
        return out

    def __bool__(self) -> bool:
        return self.passed
