"""Compact metric phase spaces."""

from abc import abstractmethod
from dataclasses import dataclass
from typing import Any, Dict, Tuple

import numpy as np

from ..shared.base_value_object import ValueObject
from ..shared.errors import DomainError
from .regions import IndexSet, IntervalSet, RectangleSet, Region


class SpaceKind(ValueObject):
    """A compact metric space the maps of a system act on.

    Points are floats on 1-D spaces, pairs of floats on products and integer
    indices on finite spaces. Every method accepting points is vectorized
    over leading array axes.
    """

    @property
    @abstractmethod
    def coordinate_shape(self) -> Tuple[int, ...]:
        pass

    @abstractmethod
    def reduce(self, points: np.ndarray) -> np.ndarray:
        """Bring coordinates into canonical form (circle wrap-around)."""
        pass

    @abstractmethod
    def normalize(self, points: Any) -> np.ndarray:
        """Validate user-supplied points and reduce them."""
        pass

    @abstractmethod
    def distance(self, p: np.ndarray, q: np.ndarray) -> np.ndarray:
        pass

    @abstractmethod
    def ball(self, center: Any, radius: float) -> Region:
        """Closed ball of the given radius."""
        pass

    @abstractmethod
    def whole(self) -> Region:
        pass

    @abstractmethod
    def sample(self, rng: np.random.Generator) -> Any:
        pass

    @abstractmethod
    def perturb(self, point: Any, delta: float, rng: np.random.Generator) -> Any:
        """Random point strictly closer than ``delta`` to ``point``."""
        pass

    @abstractmethod
    def nudge(self, point: Any, amount: float) -> Any:
        """Move ``point`` by ``amount`` along every axis, staying in the space."""
        pass

    @abstractmethod
    def describe(self) -> Dict[str, Any]:
        pass

    def to_output(self, point: Any) -> Any:
        """Plain Python form of a point, for reports."""
        arr = np.asarray(point)
        if arr.shape == ():
            return float(arr)
        return tuple(float(v) for v in arr)


class OneDimensionalSpace(SpaceKind):
    """Interval or circle, described by ``[lo, hi]`` and a periodic flag."""

    @property
    def coordinate_shape(self) -> Tuple[int, ...]:
        return ()

    @property
    @abstractmethod
    def lo(self) -> float:
        pass

    @property
    @abstractmethod
    def hi(self) -> float:
        pass

    @property
    @abstractmethod
    def periodic(self) -> bool:
        pass

    @property
    def extent(self) -> float:
        return self.hi - self.lo

    def whole(self) -> IntervalSet:
        return IntervalSet.single(self.lo, self.hi)

    def sample(self, rng: np.random.Generator) -> float:
        return float(self.reduce(np.asarray(rng.uniform(self.lo, self.hi))))

    def perturb(self, point: float, delta: float, rng: np.random.Generator) -> float:
        offset = rng.uniform(-delta, delta) * (1.0 - 1e-9)
        moved = float(point) + offset
        if not self.periodic and not self.lo <= moved <= self.hi:
            # reflect off the end instead of piling up on it
            moved = float(point) - offset
        return float(self._settle(np.asarray(moved)))

    def nudge(self, point: float, amount: float) -> float:
        return float(self._settle(np.asarray(float(point) + amount)))

    @abstractmethod
    def _settle(self, points: np.ndarray) -> np.ndarray:
        """Map arbitrary reals back into the space (clip or wrap)."""
        pass


@dataclass(frozen=True)
class Interval(OneDimensionalSpace):
    """Closed interval ``[lo, hi]`` with the usual distance."""

    lo: float = 0.0
    hi: float = 1.0

    def _validate(self) -> None:
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)):
            raise DomainError("interval endpoints must be finite")
        if not self.lo < self.hi:
            raise DomainError(f"interval requires lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def periodic(self) -> bool:
        return False

    def reduce(self, points: np.ndarray) -> np.ndarray:
        return np.asarray(points, dtype=float)

    def normalize(self, points: Any) -> np.ndarray:
        arr = np.asarray(points, dtype=float)
        if np.any((arr < self.lo) | (arr > self.hi)) or np.any(~np.isfinite(arr)):
            raise DomainError(f"point outside interval [{self.lo}, {self.hi}]: {points!r}")
        return arr

    def _settle(self, points: np.ndarray) -> np.ndarray:
        return np.clip(points, self.lo, self.hi)

    def distance(self, p: np.ndarray, q: np.ndarray) -> np.ndarray:
        return np.abs(np.asarray(p, dtype=float) - np.asarray(q, dtype=float))

    def ball(self, center: float, radius: float) -> IntervalSet:
        c = float(center)
        return IntervalSet.single(max(self.lo, c - radius), min(self.hi, c + radius))

    def describe(self) -> Dict[str, Any]:
        return {"kind": "interval", "lo": float(self.lo), "hi": float(self.hi)}


@dataclass(frozen=True)
class Circle(OneDimensionalSpace):
    """Circle of the given circumference, coordinates in ``[0, circumference)``."""

    circumference: float = 1.0

    def _validate(self) -> None:
        if not (np.isfinite(self.circumference) and self.circumference > 0):
            raise DomainError(f"circumference must be positive, got {self.circumference}")

    @property
    def lo(self) -> float:
        return 0.0

    @property
    def hi(self) -> float:
        return float(self.circumference)

    @property
    def periodic(self) -> bool:
        return True

    def reduce(self, points: np.ndarray) -> np.ndarray:
        c = self.circumference
        reduced = np.mod(np.asarray(points, dtype=float), c)
        # np.mod of a tiny negative number rounds up to c itself
        return np.where(reduced >= c, 0.0, reduced)

    def normalize(self, points: Any) -> np.ndarray:
        arr = np.asarray(points, dtype=float)
        if np.any(~np.isfinite(arr)):
            raise DomainError(f"circle coordinates must be finite: {points!r}")
        return self.reduce(arr)

    def _settle(self, points: np.ndarray) -> np.ndarray:
        return self.reduce(points)

    def distance(self, p: np.ndarray, q: np.ndarray) -> np.ndarray:
        d = np.abs(self.reduce(p) - self.reduce(q))
        return np.minimum(d, self.circumference - d)

    def ball(self, center: float, radius: float) -> IntervalSet:
        c = self.circumference
        if 2.0 * radius >= c:
            return self.whole()
        x = float(self.reduce(np.asarray(center)))
        return IntervalSet.single(0.0, 2.0 * radius).shift(x - radius, c)

    def describe(self) -> Dict[str, Any]:
        return {"kind": "circle", "circumference": float(self.circumference)}


@dataclass(frozen=True)
class Product(SpaceKind):
    """Product of two 1-D spaces with the max metric."""

    left: OneDimensionalSpace
    right: OneDimensionalSpace

    def _validate(self) -> None:
        for factor in (self.left, self.right):
            if not isinstance(factor, OneDimensionalSpace):
                raise DomainError("product factors must be intervals or circles")

    @property
    def factors(self) -> Tuple[OneDimensionalSpace, OneDimensionalSpace]:
        return self.left, self.right

    @property
    def coordinate_shape(self) -> Tuple[int, ...]:
        return (2,)

    def _split(self, points: Any) -> Tuple[np.ndarray, np.ndarray]:
        arr = np.asarray(points, dtype=float)
        if arr.shape[-1:] != (2,):
            raise DomainError(f"product points need two coordinates, got shape {arr.shape}")
        return arr[..., 0], arr[..., 1]

    def reduce(self, points: np.ndarray) -> np.ndarray:
        x, y = self._split(points)
        return np.stack([self.left.reduce(x), self.right.reduce(y)], axis=-1)

    def normalize(self, points: Any) -> np.ndarray:
        x, y = self._split(points)
        return np.stack([self.left.normalize(x), self.right.normalize(y)], axis=-1)

    def distance(self, p: np.ndarray, q: np.ndarray) -> np.ndarray:
        px, py = self._split(p)
        qx, qy = self._split(q)
        return np.maximum(self.left.distance(px, qx), self.right.distance(py, qy))

    def ball(self, center: Any, radius: float) -> RectangleSet:
        x, y = self._split(center)
        return RectangleSet.from_product(self.left.ball(float(x), radius), self.right.ball(float(y), radius))

    def whole(self) -> RectangleSet:
        return RectangleSet.from_product(self.left.whole(), self.right.whole())

    def sample(self, rng: np.random.Generator) -> Tuple[float, float]:
        return self.left.sample(rng), self.right.sample(rng)

    def perturb(self, point: Any, delta: float, rng: np.random.Generator) -> Tuple[float, float]:
        return self.left.perturb(point[0], delta, rng), self.right.perturb(point[1], delta, rng)

    def nudge(self, point: Any, amount: float) -> Tuple[float, float]:
        return self.left.nudge(point[0], amount), self.right.nudge(point[1], amount)

    def describe(self) -> Dict[str, Any]:
        return {"kind": "product", "left": self.left.describe(), "right": self.right.describe()}


class FiniteSpace(SpaceKind):
    """Finite metric space whose points are the indices ``0..size-1``."""

    @property
    @abstractmethod
    def size(self) -> int:
        pass

    @property
    def coordinate_shape(self) -> Tuple[int, ...]:
        return ()

    def reduce(self, points: np.ndarray) -> np.ndarray:
        return np.asarray(points, dtype=np.int64)

    def normalize(self, points: Any) -> np.ndarray:
        arr = np.asarray(points)
        if arr.dtype.kind not in "iu":
            if not np.all(np.equal(np.mod(arr, 1), 0)):
                raise DomainError(f"finite-space points are integer indices: {points!r}")
        arr = arr.astype(np.int64)
        if np.any((arr < 0) | (arr >= self.size)):
            raise DomainError(f"point index outside 0..{self.size - 1}: {points!r}")
        return arr

    def ball(self, center: Any, radius: float) -> IndexSet:
        all_points = np.arange(self.size)
        d = self.distance(np.full(self.size, int(center)), all_points)
        return IndexSet(all_points[d <= radius])

    def whole(self) -> IndexSet:
        return IndexSet(np.arange(self.size))

    def sample(self, rng: np.random.Generator) -> int:
        return int(rng.integers(self.size))

    def perturb(self, point: Any, delta: float, rng: np.random.Generator) -> int:
        all_points = np.arange(self.size)
        d = self.distance(np.full(self.size, int(point)), all_points)
        return int(rng.choice(all_points[d < delta]))

    def nudge(self, point: Any, amount: float) -> int:
        return int(point)

    def to_output(self, point: Any) -> Any:
        return int(point)

    def point_label(self, i: int) -> str:
        return str(int(i))


def dist(space: SpaceKind, p: Any, q: Any) -> float:
    """Distance between two points of ``space``."""
    shape = space.coordinate_shape
    if np.shape(p) != shape or np.shape(q) != shape:
        raise DomainError(
            f"dimension mismatch: expected points of shape {shape}, got {np.shape(p)} and {np.shape(q)}"
        )
    return float(space.distance(space.normalize(p), space.normalize(q)))
