"""Adding-machine arithmetic on mixed-radix digit strings.

Digit strings are little-endian: the first digit is the least significant
and carries propagate to the right. Truncated strings wrap around, the carry
out of the last digit is dropped.
"""

from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

import numpy as np

from ..shared.base_value_object import ValueObject
from ..shared.errors import DomainError


@dataclass(frozen=True)
class DigitString(ValueObject):
    """Digits ``(x_1, ..., x_D)``; ranges are checked against an odometer."""

    digits: Tuple[int, ...]

    def _validate(self) -> None:
        object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))
        if any(d < 0 for d in self.digits):
            raise DomainError(f"digits must be non-negative: {self.digits}")

    @classmethod
    def from_csv(cls, text: str) -> "DigitString":
        try:
            return cls(tuple(int(part) for part in text.split(",") if part.strip()))
        except ValueError as e:
            raise DomainError(f"cannot parse digit string {text!r}: {e}") from e

    def to_csv(self) -> str:
        return ",".join(str(d) for d in self.digits)

    def __len__(self) -> int:
        return len(self.digits)


@dataclass(frozen=True)
class Odometer(ValueObject):
    """Radices ``alpha = (j_1, j_2, ...)`` truncated to ``depth`` digits.

    When ``alpha`` is shorter than ``depth`` the remaining radices take the
    constant ``tail`` value.
    """

    alpha: Tuple[int, ...]
    depth: int
    tail: Optional[int] = None

    def _validate(self) -> None:
        object.__setattr__(self, "alpha", tuple(int(j) for j in self.alpha))
        if self.depth < 0:
            raise DomainError(f"odometer depth must be non-negative, got {self.depth}")
        if len(self.alpha) < self.depth and self.tail is None:
            raise DomainError(
                f"alpha has {len(self.alpha)} entries for depth {self.depth}; declare a tail radix"
            )
        for j in self.radices:
            if j < 2:
                raise DomainError(f"every radix must be at least 2, got {j}")

    @property
    def radices(self) -> Tuple[int, ...]:
        padded = self.alpha + (self.tail,) * max(0, self.depth - len(self.alpha))
        return tuple(int(j) for j in padded[: self.depth])

    @property
    def size(self) -> int:
        """Number of depth-``D`` digit strings."""
        return int(np.prod(self.radices, dtype=np.int64)) if self.depth else 1

    def zero(self) -> DigitString:
        return DigitString((0,) * self.depth)

    def unit(self) -> DigitString:
        """``(1, 0, 0, ...)``."""
        if self.depth == 0:
            return self.zero()
        return DigitString((1,) + (0,) * (self.depth - 1))

    def check(self, x: DigitString) -> None:
        if len(x) != self.depth:
            raise DomainError(f"digit string has {len(x)} digits, odometer depth is {self.depth}")
        for i, (d, j) in enumerate(zip(x.digits, self.radices)):
            if d >= j:
                raise DomainError(f"digit {i + 1} is {d}, must be below radix {j}")

    def d_alpha(self, x: DigitString, y: DigitString) -> float:
        """``sum_i [x_i != y_i] / 2^i`` over the stored digits.

        The truncation error against the infinite sequence is at most ``2^-D``.
        """
        self.check(x)
        self.check(y)
        return float(sum(0.5 ** (i + 1) for i, (a, b) in enumerate(zip(x.digits, y.digits)) if a != b))

    def add(self, x: DigitString, y: DigitString) -> DigitString:
        self.check(x)
        self.check(y)
        carry = 0
        out = []
        for a, b, j in zip(x.digits, y.digits, self.radices):
            total = a + b + carry
            out.append(total % j)
            carry = 1 if total >= j else 0
        return DigitString(tuple(out))

    def g_alpha(self, x: DigitString) -> DigitString:
        return self.add(x, self.unit())

    def index_of(self, x: DigitString) -> int:
        """Position of ``x`` in odometer counting order from zero."""
        self.check(x)
        index, weight = 0, 1
        for d, j in zip(x.digits, self.radices):
            index += d * weight
            weight *= j
        return index

    def digits_of(self, index: int) -> DigitString:
        if not 0 <= index < self.size:
            raise DomainError(f"index {index} outside 0..{self.size - 1}")
        out = []
        for j in self.radices:
            index, d = divmod(index, j)
            out.append(d)
        return DigitString(tuple(out))

    def digit_table(self) -> np.ndarray:
        """Digits of every index, shape ``(size, depth)``."""
        index = np.arange(self.size, dtype=np.int64)
        table = np.zeros((self.size, self.depth), dtype=np.int64)
        for i, j in enumerate(self.radices):
            index, table[:, i] = np.divmod(index, j)
        return table

    def truncate(self, depth: int) -> "Odometer":
        if depth > self.depth:
            raise DomainError(f"cannot truncate depth {self.depth} to {depth}")
        return Odometer(self.radices[:depth], depth)

    def orbit(self, x: DigitString, steps: int) -> Iterable[DigitString]:
        for _ in range(steps):
            yield x
            x = self.g_alpha(x)
