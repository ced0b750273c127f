"""Iterated function systems."""

import itertools
from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..shared.base_value_object import ValueObject
from ..shared.errors import DomainError, ResourceCapError
from ..space.space_kind import FiniteSpace, OneDimensionalSpace, Product, SpaceKind
from .map_spec import MapSpec, ProductMap, compose
from .word import PseudoOrbit, Word

DEFAULT_MAX_MAPS = 4096

# sampled points per axis for the self-mapping check
_SELF_MAP_SAMPLES = 257
_SELF_MAP_TOLERANCE = 1e-12


@dataclass(frozen=True)
class ChainValidation:
    """Outcome of checking a pseudo-orbit against a system."""

    valid: bool
    witness: Optional[Word] = None
    failed_step: Optional[int] = None


@dataclass(frozen=True)
class IFSystem(ValueObject):
    """A finite family of continuous self-maps ``f_0 .. f_{n-1}`` of one space."""

    space: SpaceKind
    maps: Tuple[MapSpec, ...]
    name: str = field(default="", compare=False)

    def _validate(self) -> None:
        object.__setattr__(self, "maps", tuple(self.maps))
        if not self.maps:
            raise DomainError("a system needs at least one map")
        for m in self.maps:
            m.check_space(self.space)
        self._check_self_mapping()

    def _sample_points(self) -> np.ndarray:
        space = self.space
        if isinstance(space, OneDimensionalSpace):
            return np.linspace(space.lo, space.hi, _SELF_MAP_SAMPLES, endpoint=not space.periodic)
        if isinstance(space, Product):
            per_axis = int(np.sqrt(_SELF_MAP_SAMPLES)) + 1
            xs = np.linspace(space.left.lo, space.left.hi, per_axis, endpoint=not space.left.periodic)
            ys = np.linspace(space.right.lo, space.right.hi, per_axis, endpoint=not space.right.periodic)
            gx, gy = np.meshgrid(xs, ys, indexing="ij")
            return np.stack([gx.ravel(), gy.ravel()], axis=-1)
        if isinstance(space, FiniteSpace):
            return np.unique(np.linspace(0, space.size - 1, min(space.size, 4096)).astype(np.int64))
        raise DomainError(f"unsupported space {space!r}")

    def _check_self_mapping(self) -> None:
        samples = self._sample_points()
        for symbol, m in enumerate(self.maps):
            images = m.apply(self.space, samples)
            if isinstance(self.space, FiniteSpace):
                bad = (images < 0) | (images >= self.space.size)
            elif isinstance(self.space, Product):
                bad = self._outside(self.space.left, images[..., 0]) | self._outside(self.space.right, images[..., 1])
            else:
                bad = self._outside(self.space, images)
            if np.any(bad):
                raise DomainError(f"map {symbol} ({m.describe()}) does not send the space into itself")

    @staticmethod
    def _outside(space: OneDimensionalSpace, values: np.ndarray) -> np.ndarray:
        tol = _SELF_MAP_TOLERANCE * max(1.0, space.extent)
        return (values < space.lo - tol) | (values > space.hi + tol) | ~np.isfinite(values)

    @property
    def n_symbols(self) -> int:
        return len(self.maps)

    def _map(self, symbol: int) -> MapSpec:
        if not isinstance(symbol, (int, np.integer)) or not 0 <= symbol < len(self.maps):
            raise DomainError(f"symbol {symbol!r} out of range for {len(self.maps)} maps")
        return self.maps[int(symbol)]

    def apply_many(self, symbol: int, points: np.ndarray) -> np.ndarray:
        """Vectorized ``f_symbol`` over already-normalized points."""
        return self._map(symbol).apply(self.space, points)

    def apply(self, symbol: int, p: Any) -> Any:
        m = self._map(symbol)
        return self.space.to_output(m.apply(self.space, self.space.normalize(p)))

    def apply_word(self, word: Word, p: Any) -> Any:
        """Fold the word over ``p``, leftmost symbol first."""
        word.check_alphabet(self.n_symbols)
        x = self.space.normalize(p)
        for symbol in word:
            x = self.maps[symbol].apply(self.space, x)
        return self.space.to_output(x)

    def orbit(self, word: Word, x0: Any) -> List[Any]:
        word.check_alphabet(self.n_symbols)
        x = self.space.normalize(x0)
        points = [self.space.to_output(x)]
        for symbol in word:
            x = self.maps[symbol].apply(self.space, x)
            points.append(self.space.to_output(x))
        return points

    def validate_chain(self, chain: PseudoOrbit, delta: float) -> ChainValidation:
        """Check ``dist(f_s(x_i), x_{i+1}) < delta`` for some symbol at every step.

        The witness takes the lowest qualifying symbol per step.
        """
        if not delta > 0:
            raise DomainError(f"delta must be positive, got {delta}")
        points = [self.space.normalize(p) for p in chain.points]
        witness: List[int] = []
        for i in range(len(points) - 1):
            images = np.stack([m.apply(self.space, points[i]) for m in self.maps])
            d = self.space.distance(images, points[i + 1])
            hits = np.flatnonzero(d < delta)
            if hits.size == 0:
                return ChainValidation(valid=False, failed_step=i)
            witness.append(int(hits[0]))
        return ChainValidation(valid=True, witness=Word(tuple(witness)))

    def iterate(self, n: int, max_maps: int = DEFAULT_MAX_MAPS) -> "IFSystem":
        """The system of all length-``n`` composition words, lexicographic order."""
        if not isinstance(n, (int, np.integer)) or n < 1:
            raise DomainError(f"iterate needs n >= 1, got {n!r}")
        count = self.n_symbols ** n
        if count > max_maps:
            raise ResourceCapError(f"iterate of order {n} has {count} maps, cap is {max_maps}")
        maps = tuple(
            reduce(compose, (self.maps[s] for s in word))
            for word in itertools.product(range(self.n_symbols), repeat=n)
        )
        return IFSystem(self.space, maps, name=f"{self.name}^{n}" if self.name else "")

    def product(self, other: "IFSystem", max_maps: int = DEFAULT_MAX_MAPS) -> "IFSystem":
        """Product system; symbol ``(s, t)`` is numbered ``s * |other| + t``."""
        count = self.n_symbols * other.n_symbols
        if count > max_maps:
            raise ResourceCapError(f"product system has {count} maps, cap is {max_maps}")
        maps = tuple(ProductMap(f, g) for f in self.maps for g in other.maps)
        name = f"{self.name}x{other.name}" if self.name and other.name else ""
        return IFSystem(Product(self.space, other.space), maps, name=name)

    def subsystem(self, symbols: Sequence[int]) -> "IFSystem":
        return IFSystem(self.space, tuple(self._map(s) for s in symbols), name=self.name)

    def word_of(self, symbol: int, n: int) -> Word:
        """The length-``n`` word behind symbol ``symbol`` of ``iterate(n)``."""
        digits = []
        for _ in range(n):
            symbol, d = divmod(symbol, self.n_symbols)
            digits.append(d)
        return Word(tuple(reversed(digits)))

    def describe(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "space": self.space.describe(),
            "maps": [m.describe() for m in self.maps],
        }

