"""Symbol words and pseudo-orbits."""

from dataclasses import dataclass
from typing import Any, Iterator, Tuple

import numpy as np

from ..shared.base_value_object import ValueObject
from ..shared.errors import DomainError


@dataclass(frozen=True)
class Word(ValueObject):
    """Symbols in application order: ``symbols[0]`` acts first."""

    symbols: Tuple[int, ...] = ()

    def _validate(self) -> None:
        for s in self.symbols:
            if not isinstance(s, (int, np.integer)) or isinstance(s, bool) or s < 0:
                raise DomainError(f"word symbols must be non-negative integers, got {s!r}")
        object.__setattr__(self, "symbols", tuple(int(s) for s in self.symbols))

    @classmethod
    def from_csv(cls, text: str) -> "Word":
        text = text.strip()
        if not text:
            return cls(())
        try:
            return cls(tuple(int(part) for part in text.split(",")))
        except ValueError as e:
            raise DomainError(f"cannot parse word {text!r}: {e}") from e

    def to_csv(self) -> str:
        return ",".join(str(s) for s in self.symbols)

    def check_alphabet(self, n_symbols: int) -> None:
        for s in self.symbols:
            if s >= n_symbols:
                raise DomainError(f"symbol {s} out of range for {n_symbols} maps")

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.symbols + other.symbols)


@dataclass(frozen=True)
class PseudoOrbit(ValueObject):
    """A point sequence together with the tolerance its producer claims."""

    points: Tuple[Any, ...]
    delta: float

    def _validate(self) -> None:
        if len(self.points) < 1:
            raise DomainError("a pseudo-orbit needs at least one point")
        if not self.delta > 0:
            raise DomainError(f"pseudo-orbit tolerance must be positive, got {self.delta}")

    def __len__(self) -> int:
        return len(self.points)
