from dataclasses import dataclass
from typing import Any, Dict, Optional


@dataclass(frozen=True)
class ToolResponse:
    """Outcome of one command: ``status`` is "success" or "error"."""

    status: str
    data: Optional[Dict[str, Any]]
    message: str

    @classmethod
    def failure(cls, message: str) -> "ToolResponse":
        return cls("error", None, message)

    @property
    def ok(self) -> bool:
        return self.status == "success"
