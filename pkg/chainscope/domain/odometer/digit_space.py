"""The truncated odometer as a finite dynamical system."""

from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from ..ifs.map_spec import MapSpec
from ..ifs.system import IFSystem
from ..shared.errors import DomainError, ResourceCapError
from ..space.regions import IndexSet
from ..space.space_kind import FiniteSpace, SpaceKind
from .odometer import Odometer

DEFAULT_MAX_POINTS = 100_000


@dataclass(frozen=True)
class DigitSpace(FiniteSpace):
    """All depth-``D`` digit strings with the metric ``d_alpha``.

    Point ``i`` is the string at position ``i`` of odometer counting order,
    so adding one in the odometer is ``i -> i + 1 mod size``.
    """

    odometer: Odometer

    def _validate(self) -> None:
        pass

    @property
    def size(self) -> int:
        return self.odometer.size

    @property
    def _table(self) -> np.ndarray:
        cached = self.__dict__.get("_digit_table")
        if cached is None:
            cached = self.odometer.digit_table()
            object.__setattr__(self, "_digit_table", cached)
        return cached

    @property
    def _weights(self) -> np.ndarray:
        return 0.5 ** np.arange(1, self.odometer.depth + 1)

    def distance(self, p: np.ndarray, q: np.ndarray) -> np.ndarray:
        p = np.asarray(p, dtype=np.int64)
        q = np.asarray(q, dtype=np.int64)
        differs = self._table[p] != self._table[q]
        return differs @ self._weights

    def describe(self) -> Dict[str, Any]:
        return {
            "kind": "odometer",
            "alpha": list(self.odometer.radices),
            "depth": self.odometer.depth,
        }

    def point_label(self, i: int) -> str:
        return self.odometer.digits_of(int(i)).to_csv()


@dataclass(frozen=True)
class OdometerMap(MapSpec):
    """``g_alpha`` applied ``steps`` times on a digit space."""

    odometer: Odometer
    steps: int = 1

    def _validate(self) -> None:
        object.__setattr__(self, "steps", int(self.steps))

    def check_space(self, space: SpaceKind) -> None:
        if not isinstance(space, DigitSpace) or space.odometer != self.odometer:
            raise DomainError("odometer maps act on the digit space of the same odometer")

    def apply(self, space: SpaceKind, points: np.ndarray) -> np.ndarray:
        return np.mod(np.asarray(points, dtype=np.int64) + self.steps, self.odometer.size)

    @property
    def lipschitz(self) -> float:
        # distinct points are at least 2^-D apart and at most 1 apart
        return float(2 ** self.odometer.depth)

    def combine(self, then: MapSpec) -> Optional[MapSpec]:
        if isinstance(then, OdometerMap) and then.odometer == self.odometer:
            return OdometerMap(self.odometer, self.steps + then.steps)
        return None

    def image(self, space: SpaceKind, region: IndexSet) -> IndexSet:
        return IndexSet(self.apply(space, region.indices))

    def preimage(self, space: SpaceKind, region: IndexSet) -> IndexSet:
        return IndexSet(np.mod(region.indices - self.steps, self.odometer.size))

    def describe(self) -> str:
        return f"odometer steps={self.steps}"


def as_finite_system(odometer: Odometer, max_points: int = DEFAULT_MAX_POINTS) -> IFSystem:
    """Digit space of ``odometer`` with ``g_alpha`` as its single map."""
    if odometer.size > max_points:
        raise ResourceCapError(f"odometer has {odometer.size} points, cap is {max_points}")
    space = DigitSpace(odometer)
    return IFSystem(space, (OdometerMap(odometer),), name="odometer(" + ",".join(map(str, odometer.radices)) + ")")
