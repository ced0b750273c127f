"""Closed point sets used for exact witness refinement.

A region is a finite union of closed pieces: intervals on 1-D spaces,
axis-aligned rectangles on product spaces and explicit index sets on finite
spaces. Map images and preimages of regions are computed by the maps
themselves; this module only provides the set algebra.
"""

from abc import ABC, abstractmethod
from typing import Iterable, Sequence, Tuple

import numpy as np


class Region(ABC):
    """A finite union of closed pieces."""

    @property
    @abstractmethod
    def piece_count(self) -> int:
        pass

    @property
    def is_empty(self) -> bool:
        return self.piece_count == 0

    @abstractmethod
    def intersect(self, other: "Region") -> "Region":
        pass

    @abstractmethod
    def union(self, other: "Region") -> "Region":
        pass

    @abstractmethod
    def pick(self):
        """Return a deterministic interior point of the largest piece."""
        pass

    @abstractmethod
    def contains(self, point, tol: float = 0.0) -> bool:
        pass

    @classmethod
    def union_all(cls, regions: Sequence["Region"]) -> "Region":
        result = regions[0]
        for region in regions[1:]:
            result = result.union(region)
        return result


class IntervalSet(Region):
    """Sorted, merged union of closed intervals ``[lo_i, hi_i]``."""

    def __init__(self, lo: Iterable[float], hi: Iterable[float]):
        lo = np.asarray(lo, dtype=float).ravel()
        hi = np.asarray(hi, dtype=float).ravel()
        keep = lo <= hi
        lo, hi = lo[keep], hi[keep]
        self._lo, self._hi = self._merge(lo, hi)

    @staticmethod
    def _merge(lo: np.ndarray, hi: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        if lo.size == 0:
            return lo, hi
        order = np.lexsort((hi, lo))
        lo, hi = lo[order], hi[order]
        running_hi = np.maximum.accumulate(hi)
        # a new piece starts wherever the next lo clears everything before it
        starts = np.ones(lo.size, dtype=bool)
        starts[1:] = lo[1:] > running_hi[:-1]
        first = np.flatnonzero(starts)
        last = np.append(first[1:] - 1, lo.size - 1)
        return lo[first], running_hi[last]

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls([], [])

    @classmethod
    def single(cls, lo: float, hi: float) -> "IntervalSet":
        return cls([lo], [hi])

    @property
    def lo(self) -> np.ndarray:
        return self._lo

    @property
    def hi(self) -> np.ndarray:
        return self._hi

    @property
    def piece_count(self) -> int:
        return int(self._lo.size)

    @property
    def measure(self) -> float:
        return float(np.sum(self._hi - self._lo))

    def intersect(self, other: "Region") -> "IntervalSet":
        if self.is_empty or other.is_empty:
            return IntervalSet.empty()
        lo = np.maximum(self._lo[:, None], other.lo[None, :])
        hi = np.minimum(self._hi[:, None], other.hi[None, :])
        keep = lo <= hi
        return IntervalSet(lo[keep], hi[keep])

    def union(self, other: "Region") -> "IntervalSet":
        return IntervalSet(
            np.concatenate([self._lo, other.lo]),
            np.concatenate([self._hi, other.hi]),
        )

    def shift(self, offset: float, period: float) -> "IntervalSet":
        """Translate by ``offset`` on a circle of the given circumference."""
        offset = float(np.mod(offset, period))
        lo = self._lo + offset
        hi = self._hi + offset
        wrapped = lo >= period
        lo = np.where(wrapped, lo - period, lo)
        hi = np.where(wrapped, hi - period, hi)
        split = hi > period
        pieces_lo = [lo[~split], lo[split], np.zeros(int(split.sum()))]
        pieces_hi = [hi[~split], np.full(int(split.sum()), period), hi[split] - period]
        return IntervalSet(np.concatenate(pieces_lo), np.concatenate(pieces_hi))

    def pick(self) -> float:
        if self.is_empty:
            raise ValueError("cannot pick a point from an empty region")
        widths = self._hi - self._lo
        i = int(np.argmax(widths))
        return float(0.5 * (self._lo[i] + self._hi[i]))

    def contains(self, point, tol: float = 0.0) -> bool:
        x = float(point)
        return bool(np.any((self._lo - tol <= x) & (x <= self._hi + tol)))

    def __repr__(self) -> str:
        pieces = ", ".join(f"[{a!r}, {b!r}]" for a, b in zip(self._lo, self._hi))
        return f"IntervalSet({pieces})"


class RectangleSet(Region):
    """Union of closed axis-aligned rectangles on a two-factor product."""

    def __init__(self, x_lo, x_hi, y_lo, y_hi):
        bounds = np.column_stack([
            np.asarray(x_lo, dtype=float).ravel(),
            np.asarray(x_hi, dtype=float).ravel(),
            np.asarray(y_lo, dtype=float).ravel(),
            np.asarray(y_hi, dtype=float).ravel(),
        ]) if np.size(x_lo) else np.zeros((0, 4))
        keep = (bounds[:, 0] <= bounds[:, 1]) & (bounds[:, 2] <= bounds[:, 3])
        bounds = bounds[keep]
        if bounds.shape[0]:
            bounds = np.unique(bounds, axis=0)
        self._bounds = bounds

    @classmethod
    def empty(cls) -> "RectangleSet":
        return cls([], [], [], [])

    @classmethod
    def from_product(cls, xs: IntervalSet, ys: IntervalSet) -> "RectangleSet":
        """All rectangles ``I x J`` with ``I`` from ``xs`` and ``J`` from ``ys``."""
        if xs.is_empty or ys.is_empty:
            return cls.empty()
        ix, iy = np.meshgrid(np.arange(xs.piece_count), np.arange(ys.piece_count), indexing="ij")
        ix, iy = ix.ravel(), iy.ravel()
        return cls(xs.lo[ix], xs.hi[ix], ys.lo[iy], ys.hi[iy])

    @property
    def bounds(self) -> np.ndarray:
        return self._bounds

    @property
    def piece_count(self) -> int:
        return int(self._bounds.shape[0])

    def axis_sets(self, i: int) -> Tuple[IntervalSet, IntervalSet]:
        x_lo, x_hi, y_lo, y_hi = self._bounds[i]
        return IntervalSet.single(x_lo, x_hi), IntervalSet.single(y_lo, y_hi)

    def intersect(self, other: "Region") -> "RectangleSet":
        if self.is_empty or other.is_empty:
            return RectangleSet.empty()
        a = self._bounds[:, None, :]
        b = other.bounds[None, :, :]
        x_lo = np.maximum(a[..., 0], b[..., 0])
        x_hi = np.minimum(a[..., 1], b[..., 1])
        y_lo = np.maximum(a[..., 2], b[..., 2])
        y_hi = np.minimum(a[..., 3], b[..., 3])
        keep = (x_lo <= x_hi) & (y_lo <= y_hi)
        return RectangleSet(x_lo[keep], x_hi[keep], y_lo[keep], y_hi[keep])

    def union(self, other: "Region") -> "RectangleSet":
        stacked = np.vstack([self._bounds, other.bounds])
        return RectangleSet(stacked[:, 0], stacked[:, 1], stacked[:, 2], stacked[:, 3])

    def pick(self) -> Tuple[float, float]:
        if self.is_empty:
            raise ValueError("cannot pick a point from an empty region")
        sides = np.minimum(self._bounds[:, 1] - self._bounds[:, 0], self._bounds[:, 3] - self._bounds[:, 2])
        i = int(np.argmax(sides))
        x_lo, x_hi, y_lo, y_hi = self._bounds[i]
        return float(0.5 * (x_lo + x_hi)), float(0.5 * (y_lo + y_hi))

    def contains(self, point, tol: float = 0.0) -> bool:
        x, y = float(point[0]), float(point[1])
        b = self._bounds
        inside = (b[:, 0] - tol <= x) & (x <= b[:, 1] + tol) & (b[:, 2] - tol <= y) & (y <= b[:, 3] + tol)
        return bool(np.any(inside))


class IndexSet(Region):
    """Explicit set of point indices of a finite space."""

    def __init__(self, indices: Iterable[int]):
        if not isinstance(indices, np.ndarray):
            indices = np.fromiter(indices, dtype=np.int64)
        self._indices = np.unique(indices.astype(np.int64))

    @classmethod
    def empty(cls) -> "IndexSet":
        return cls(np.zeros(0, dtype=np.int64))

    @property
    def indices(self) -> np.ndarray:
        return self._indices

    @property
    def piece_count(self) -> int:
        return int(self._indices.size)

    def intersect(self, other: "Region") -> "IndexSet":
        return IndexSet(np.intersect1d(self._indices, other.indices))

    def union(self, other: "Region") -> "IndexSet":
        return IndexSet(np.union1d(self._indices, other.indices))

    def pick(self) -> int:
        if self.is_empty:
            raise ValueError("cannot pick a point from an empty region")
        return int(self._indices[0])

    def contains(self, point, tol: float = 0.0) -> bool:
        return bool(np.isin(int(point), self._indices))
