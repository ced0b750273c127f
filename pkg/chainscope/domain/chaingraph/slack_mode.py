"""How much slack box-center edges get beyond epsilon."""

from dataclasses import dataclass
from typing import Optional

from ..ifs.map_spec import MapSpec
from ..shared.base_value_object import ValueObject
from ..shared.errors import DomainError


@dataclass(frozen=True)
class SlackMode(ValueObject):
    """``strict`` compares center distances against epsilon itself.

    ``fattened`` adds ``slack`` to epsilon; without an explicit value each
    map gets ``h/2 + L*h/2`` from its Lipschitz bound ``L``.
    """

    name: str = "strict"
    slack: Optional[float] = None

    def _validate(self) -> None:
        if self.name not in ("strict", "fattened"):
            raise DomainError(f"slack mode must be 'strict' or 'fattened', got {self.name!r}")
        if self.name == "strict" and self.slack is not None:
            raise DomainError("strict mode takes no slack")
        if self.slack is not None and self.slack < 0:
            raise DomainError(f"slack must be non-negative, got {self.slack}")

    @classmethod
    def strict(cls) -> "SlackMode":
        return cls("strict")

    @classmethod
    def fattened(cls, slack: Optional[float] = None) -> "SlackMode":
        return cls("fattened", slack)

    @property
    def is_strict(self) -> bool:
        return self.name == "strict"

    def slack_for(self, m: MapSpec, box_diameter: float) -> float:
        if self.is_strict:
            return 0.0
        if self.slack is not None:
            return float(self.slack)
        if box_diameter == 0:
            return 0.0
        return box_diameter / 2 + m.lipschitz * box_diameter / 2

    def describe(self) -> str:
        if self.is_strict:
            return "strict"
        return "fattened" if self.slack is None else f"fattened({self.slack!r})"
