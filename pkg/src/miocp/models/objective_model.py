from dataclasses import dataclass, field
from typing import Any, Dict, Tuple

from ..interfaces.iserializable import ISerializable


@dataclass(frozen=True)
class ObjectiveBreakdown(ISerializable):
    """J(pi, rho) split into its three expectations.

    ``kl_cost`` is already scaled by epsilon. ``per_step`` holds the unscaled
    (quadratic, expected KL) pair of each step.
    """

    quadratic_cost: float
    kl_cost: float
    terminal_cost: float
    total: float
    per_step: Tuple[Tuple[float, float], ...] = field(default_factory=tuple)
    per_step_mutual_information: Tuple[float, ...] = field(default_factory=tuple)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "quadratic_cost": self.quadratic_cost,
            "kl_cost": self.kl_cost,
            "terminal_cost": self.terminal_cost,
            "total": self.total,
            "per_step": [list(pair) for pair in self.per_step],
            "per_step_mutual_information": list(self.per_step_mutual_information),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ObjectiveBreakdown":
        return cls(
            quadratic_cost=float(data["quadratic_cost"]),
            kl_cost=float(data["kl_cost"]),
            terminal_cost=float(data["terminal_cost"]),
            total=float(data["total"]),
            per_step=tuple(
                (float(a), float(b)) for a, b in data.get("per_step", [])),
            per_step_mutual_information=tuple(
                float(v) for v in data.get("per_step_mutual_information", [])),
        )
