"""Uniform box grids over compact spaces."""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Hashable, List, Sequence, Tuple, Union

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from ..shared.errors import DomainError
from .regions import IndexSet, IntervalSet, RectangleSet, Region
from .space_kind import FiniteSpace, OneDimensionalSpace, Product, SpaceKind


@dataclass(frozen=True)
class Axis:
    """One grid axis: ``n`` equal boxes tiling ``[lo, hi]``."""

    lo: float
    hi: float
    n: int
    periodic: bool

    @property
    def width(self) -> float:
        return (self.hi - self.lo) / self.n

    def centers(self) -> np.ndarray:
        return self.lo + (np.arange(self.n) + 0.5) * self.width

    def locate(self, x: np.ndarray) -> np.ndarray:
        idx = np.floor((np.asarray(x, dtype=float) - self.lo) / self.width).astype(np.int64)
        # half-open boxes, the upper interval endpoint belongs to the last box
        return np.clip(idx, 0, self.n - 1)

    def distance(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        d = np.abs(x - y)
        if self.periodic:
            d = np.minimum(d, (self.hi - self.lo) - d)
        return d

    def candidates(self, y: np.ndarray, radius: float) -> Tuple[np.ndarray, np.ndarray]:
        """Boxes whose centers lie strictly within ``radius`` of each ``y``.

        Returns an index matrix with one row per point and a boolean mask of
        the entries that qualify.
        """
        y = np.asarray(y, dtype=float)
        width = int(np.ceil(2.0 * radius / self.width)) + 3
        if self.periodic and width >= self.n:
            cand = np.broadcast_to(np.arange(self.n), (y.size, self.n))
            valid = np.ones(cand.shape, dtype=bool)
        else:
            start = np.floor((y - self.lo - radius) / self.width - 0.5).astype(np.int64)
            cand = start[:, None] + np.arange(width)[None, :]
            if self.periodic:
                cand = np.mod(cand, self.n)
                valid = np.ones(cand.shape, dtype=bool)
            else:
                valid = (cand >= 0) & (cand < self.n)
                cand = np.clip(cand, 0, self.n - 1)
        centers = self.lo + (cand + 0.5) * self.width
        keep = valid & (self.distance(centers, y[:, None]) < radius)
        return cand, keep

    def box_bounds(self, indices: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        indices = np.asarray(indices)
        return self.lo + indices * self.width, self.lo + (indices + 1) * self.width


class Grid(ABC):
    """A finite partition of a space into boxes ``0..n_boxes-1``."""

    def __init__(self, space: SpaceKind):
        self._space = space

    @property
    def space(self) -> SpaceKind:
        return self._space

    @property
    @abstractmethod
    def n_boxes(self) -> int:
        pass

    @property
    @abstractmethod
    def diameter(self) -> float:
        """Largest box diameter ``h`` (zero on point grids)."""
        pass

    @property
    @abstractmethod
    def resolution(self) -> Union[int, Tuple[int, int]]:
        pass

    @property
    def key(self) -> Hashable:
        return (self._space, self.resolution)

    @abstractmethod
    def centers(self) -> np.ndarray:
        pass

    def center(self, i: int) -> Any:
        self._check_box(i)
        return self._space.to_output(self.centers()[i])

    @abstractmethod
    def locate_many(self, points: np.ndarray) -> np.ndarray:
        pass

    def locate(self, p: Any) -> int:
        """Index of the unique box containing ``p``."""
        return int(self.locate_many(self._space.normalize(p)))

    @abstractmethod
    def boxes_region(self, boxes: Sequence[int]) -> Region:
        """Union of the closed boxes with the given indices."""
        pass

    @abstractmethod
    def adjacency(self) -> sparse.csr_matrix:
        """Undirected adjacency of geometrically neighbouring boxes."""
        pass

    def label(self, i: int) -> str:
        center = self.center(i)
        if isinstance(center, tuple):
            return "(" + ",".join(repr(c) for c in center) + ")"
        return repr(center)

    def describe(self) -> dict:
        return {
            "space": self._space.describe(),
            "resolution": self.resolution if isinstance(self.resolution, int) else list(self.resolution),
            "n_boxes": self.n_boxes,
            "box_diameter": self.diameter,
        }

    def _check_box(self, i: int) -> None:
        if not 0 <= i < self.n_boxes:
            raise DomainError(f"box index {i} outside 0..{self.n_boxes - 1}")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Grid) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self._space!r}, {self.resolution!r})"


class BoxGrid(Grid):
    """Uniform grid over an interval, a circle or a product of the two.

    Product boxes are numbered row-major: ``index = i_left * n_right + i_right``.
    """

    def __init__(self, space: SpaceKind, resolution: Union[int, Sequence[int]]):
        super().__init__(space)
        if isinstance(space, OneDimensionalSpace):
            if not isinstance(resolution, (int, np.integer)):
                raise DomainError("1-D grids take a single integer resolution")
            factors = [space]
            counts = [int(resolution)]
        elif isinstance(space, Product):
            if isinstance(resolution, (int, np.integer)):
                counts = [int(resolution), int(resolution)]
            else:
                counts = [int(r) for r in resolution]
            if len(counts) != 2:
                raise DomainError("product grids take one resolution per factor")
            factors = list(space.factors)
        else:
            raise DomainError(f"box grids need an interval, circle or product space, got {space!r}")
        if any(n < 1 for n in counts):
            raise DomainError(f"resolution must be positive, got {resolution!r}")
        self._axes: List[Axis] = [
            Axis(lo=f.lo, hi=f.hi, n=n, periodic=f.periodic) for f, n in zip(factors, counts)
        ]
        self._centers = self._build_centers()

    @property
    def axes(self) -> List[Axis]:
        return self._axes

    @property
    def is_product(self) -> bool:
        return len(self._axes) == 2

    @property
    def resolution(self) -> Union[int, Tuple[int, int]]:
        if self.is_product:
            return (self._axes[0].n, self._axes[1].n)
        return self._axes[0].n

    @property
    def n_boxes(self) -> int:
        return int(np.prod([a.n for a in self._axes]))

    @property
    def diameter(self) -> float:
        return max(a.width for a in self._axes)

    def refined(self, factor: int) -> "BoxGrid":
        """The same space with every axis split ``factor`` times finer."""
        if factor < 1:
            raise DomainError(f"refinement factor must be at least 1, got {factor}")
        if factor == 1:
            return self
        return BoxGrid(self.space, [a.n * factor for a in self._axes] if self.is_product else self._axes[0].n * factor)

    def _build_centers(self) -> np.ndarray:
        if not self.is_product:
            return self._axes[0].centers()
        cx, cy = np.meshgrid(self._axes[0].centers(), self._axes[1].centers(), indexing="ij")
        return np.stack([cx.ravel(), cy.ravel()], axis=-1)

    def centers(self) -> np.ndarray:
        return self._centers

    def split_index(self, boxes: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        n_right = self._axes[1].n
        boxes = np.asarray(boxes)
        return boxes // n_right, boxes % n_right

    def locate_many(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        if not self.is_product:
            return self._axes[0].locate(points)
        i = self._axes[0].locate(points[..., 0])
        j = self._axes[1].locate(points[..., 1])
        return i * self._axes[1].n + j

    def boxes_region(self, boxes: Sequence[int]) -> Region:
        boxes = np.asarray(sorted(set(int(b) for b in boxes)), dtype=np.int64)
        for b in boxes:
            self._check_box(int(b))
        if not self.is_product:
            lo, hi = self._axes[0].box_bounds(boxes)
            return IntervalSet(lo, hi)
        i, j = self.split_index(boxes)
        x_lo, x_hi = self._axes[0].box_bounds(i)
        y_lo, y_hi = self._axes[1].box_bounds(j)
        return RectangleSet(x_lo, x_hi, y_lo, y_hi)

    def boxes_within(self, bounds: Sequence[Tuple[float, float]]) -> List[int]:
        """Boxes whose centers lie in the closed axis-aligned range ``bounds``."""
        if len(bounds) != len(self._axes):
            raise DomainError(f"expected {len(self._axes)} coordinate ranges, got {len(bounds)}")
        centers = self._centers.reshape(self.n_boxes, -1)
        inside = np.ones(self.n_boxes, dtype=bool)
        for axis_no, (a, b) in enumerate(bounds):
            inside &= (centers[:, axis_no] >= a) & (centers[:, axis_no] <= b)
        return [int(i) for i in np.flatnonzero(inside)]

    def _axis_pairs(self, axis: Axis) -> Tuple[np.ndarray, np.ndarray]:
        src = np.arange(axis.n - 1)
        dst = src + 1
        if axis.periodic and axis.n > 2:
            src = np.append(src, axis.n - 1)
            dst = np.append(dst, 0)
        return src, dst

    def adjacency(self) -> sparse.csr_matrix:
        n = self.n_boxes
        if not self.is_product:
            src, dst = self._axis_pairs(self._axes[0])
        else:
            n_left, n_right = self._axes[0].n, self._axes[1].n
            pieces_src, pieces_dst = [], []
            s, d = self._axis_pairs(self._axes[0])
            rows = np.arange(n_right)
            pieces_src.append((s[:, None] * n_right + rows[None, :]).ravel())
            pieces_dst.append((d[:, None] * n_right + rows[None, :]).ravel())
            s, d = self._axis_pairs(self._axes[1])
            cols = np.arange(n_left)
            pieces_src.append((cols[:, None] * n_right + s[None, :]).ravel())
            pieces_dst.append((cols[:, None] * n_right + d[None, :]).ravel())
            src, dst = np.concatenate(pieces_src), np.concatenate(pieces_dst)
        data = np.ones(src.size, dtype=np.int8)
        matrix = sparse.coo_matrix((data, (src, dst)), shape=(n, n)).tocsr()
        return ((matrix + matrix.T) > 0).tocsr()


class PointGrid(Grid):
    """Every point of a finite space is its own box; ``h = 0``."""

    def __init__(self, space: FiniteSpace):
        if not isinstance(space, FiniteSpace):
            raise DomainError(f"point grids need a finite space, got {space!r}")
        super().__init__(space)

    @property
    def resolution(self) -> int:
        return self._space.size

    @property
    def n_boxes(self) -> int:
        return self._space.size

    @property
    def diameter(self) -> float:
        return 0.0

    def centers(self) -> np.ndarray:
        return np.arange(self._space.size, dtype=np.int64)

    def locate_many(self, points: np.ndarray) -> np.ndarray:
        return self._space.normalize(points)

    def boxes_region(self, boxes: Sequence[int]) -> IndexSet:
        for b in boxes:
            self._check_box(int(b))
        return IndexSet(np.asarray(list(boxes), dtype=np.int64))

    def boxes_within(self, bounds: Sequence[Tuple[float, float]]) -> List[int]:
        (a, b), = bounds
        return [i for i in range(self.n_boxes) if a <= i <= b]

    def adjacency(self) -> sparse.csr_matrix:
        # distinct points of a finite space never touch
        return sparse.csr_matrix((self.n_boxes, self.n_boxes), dtype=bool)

    def label(self, i: int) -> str:
        self._check_box(i)
        return self._space.point_label(i)


def grid_adjacency_connected(grid: Grid) -> bool:
    """True iff the undirected graph of neighbouring boxes is connected."""
    if grid.n_boxes <= 1:
        return True
    n_components, _ = csgraph.connected_components(grid.adjacency(), directed=False)
    return n_components == 1
