"""Search for orbits that follow a chain within a given distance.

The search is layered reachability over ``(box, step)`` pairs, where the
image of a box is the box holding the image of its center. A box witness
is then refined, when possible, by pulling exact regions back along its
word; only a refined witness is a true orbit of the system.
"""

from dataclasses import dataclass, field
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from ..ifs.system import IFSystem
from ..ifs.word import PseudoOrbit, Word
from ..shared.base_value_object import ValueObject
from ..shared.errors import ChainscopeError, DomainError, ResourceCapError
from ..space.grid import Grid
from ..space.regions import Region

DEFAULT_MAX_FRONTIER = 1_000_000
DEFAULT_MAX_PIECES = 1_000_000
# floating point slack when replaying a witness
REPLAY_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ShadowQuery(ValueObject):
    chain: PseudoOrbit
    epsilon: float
    delta: float

    def _validate(self) -> None:
        if not self.epsilon > 0:
            raise DomainError(f"shadowing distance must be positive, got {self.epsilon}")
        if len(self.chain) < 2:
            raise DomainError("shadowing needs a chain of at least two points")


@dataclass(frozen=True)
class ShadowResult:
    """``boxes`` is the box witness; ``start_point`` is set only when an
    exact orbit follows the same word (``exact``)."""

    found: bool
    word: Optional[Word] = None
    start_box: Optional[int] = None
    boxes: Optional[Tuple[int, ...]] = None
    exact: bool = False
    start_point: Any = None
    max_deviation: Optional[float] = None
    warnings: Tuple[str, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "found": self.found,
            "word": list(self.word.symbols) if self.word is not None else None,
            "start_box": self.start_box,
            "boxes": list(self.boxes) if self.boxes is not None else None,
            "exact": self.exact,
            "start_point": self.start_point,
            "max_deviation": self.max_deviation,
        }


def box_images(system: IFSystem, grid: Grid, boxes: np.ndarray) -> np.ndarray:
    """``images[s, j]`` is the box holding ``f_s`` of the center of ``boxes[j]``."""
    centers = grid.centers()[boxes]
    return np.stack([grid.locate_many(m.apply(system.space, centers)) for m in system.maps])


def _near(system: IFSystem, grid: Grid, boxes: np.ndarray, point: Any, epsilon: float) -> np.ndarray:
    return boxes[system.space.distance(grid.centers()[boxes], point) <= epsilon]


def _layers(
    system: IFSystem,
    grid: Grid,
    points: Sequence[Any],
    epsilon: float,
    max_frontier: int,
) -> List[np.ndarray]:
    """Boxes reachable at each step with every earlier box center within ``epsilon`` of the chain."""
    layers = [_near(system, grid, np.arange(grid.n_boxes), points[0], epsilon)]
    for i in range(1, len(points)):
        frontier = layers[-1]
        if frontier.size == 0:
            break
        if frontier.size * system.n_symbols > max_frontier:
            raise ResourceCapError(
                f"frontier at step {i - 1} has {frontier.size * system.n_symbols} entries, cap is {max_frontier}",
                partial_depth=i - 1,
            )
        layers.append(_near(system, grid, np.unique(box_images(system, grid, frontier)), points[i], epsilon))
    return layers


def _prune(system: IFSystem, grid: Grid, layers: List[np.ndarray]) -> List[np.ndarray]:
    """Keep only boxes from which the last layer is still reachable."""
    alive = [layers[-1]]
    for layer in reversed(layers[:-1]):
        if layer.size == 0:
            alive.append(layer)
            continue
        images = box_images(system, grid, layer)
        alive.append(layer[np.isin(images, alive[-1]).any(axis=0)])
    return alive[::-1]


def _least_path(system: IFSystem, grid: Grid, alive: List[np.ndarray]) -> Tuple[Word, Tuple[int, ...]]:
    """Lexicographically least word, ties on boxes broken by the smallest index."""
    current = alive[0]
    symbols: List[int] = []
    parents: List[dict] = []
    for i in range(len(alive) - 1):
        images = box_images(system, grid, current)
        for symbol in range(system.n_symbols):
            hit = np.isin(images[symbol], alive[i + 1])
            if hit.any():
                break
        else:
            raise ChainscopeError(f"box search lost the surviving layer at step {i}")
        targets, sources = images[symbol][hit], current[hit]
        parent: dict = {}
        for target, source in sorted(zip(targets.tolist(), sources.tolist())):
            parent.setdefault(target, source)
        symbols.append(symbol)
        parents.append(parent)
        current = np.array(sorted(parent), dtype=np.int64)

    path = [int(current[0])]
    for parent in reversed(parents):
        path.append(int(parent[path[-1]]))
    return Word(tuple(symbols)), tuple(reversed(path))


def refine_along(
    system: IFSystem,
    word: Word,
    targets: Sequence[Region],
    max_pieces: int = DEFAULT_MAX_PIECES,
) -> Optional[Any]:
    """A point whose orbit under ``word`` visits every target, or ``None``."""
    region = targets[-1]
    for i in range(len(word) - 1, -1, -1):
        region = targets[i].intersect(system.maps[word.symbols[i]].preimage(system.space, region))
        if region.piece_count > max_pieces:
            raise ResourceCapError(
                f"witness region at step {i} has {region.piece_count} pieces, cap is {max_pieces}",
                partial_depth=len(word) - i,
            )
        if region.is_empty:
            return None
    return region.pick()


def _admissible_sets(system: IFSystem, targets: Sequence[Region], max_pieces: int) -> List[Region]:
    """``A_i``: points of ``targets[i]`` from which some word visits every later target."""
    n = len(targets) - 1
    admissible: List[Optional[Region]] = [None] * (n + 1)
    admissible[n] = targets[n]
    for i in range(n - 1, -1, -1):
        pulled = Region.union_all([m.preimage(system.space, admissible[i + 1]) for m in system.maps])
        admissible[i] = targets[i].intersect(pulled)
        if admissible[i].piece_count > max_pieces:
            raise ResourceCapError(
                f"admissible set at step {i} has {admissible[i].piece_count} pieces, cap is {max_pieces}",
                partial_depth=n - i,
            )
        if admissible[i].is_empty:
            break
    return admissible


def follow_regions(
    system: IFSystem,
    targets: Sequence[Region],
    max_pieces: int = DEFAULT_MAX_PIECES,
) -> Optional[Tuple[Word, Any]]:
    """Lexicographically least word and a start point whose orbit visits
    ``targets[0], targets[1], ...`` in order, or ``None``."""
    admissible = _admissible_sets(system, targets, max_pieces)
    if admissible[0] is None or admissible[0].is_empty:
        return None

    reached = [admissible[0]]
    symbols: List[int] = []
    for i in range(len(targets) - 1):
        for symbol, m in enumerate(system.maps):
            step = m.image(system.space, reached[i]).intersect(admissible[i + 1])
            if not step.is_empty:
                symbols.append(symbol)
                reached.append(step)
                break
        else:
            raise ChainscopeError(f"forward pass lost the admissible set at step {i}")

    # pull the final set back along the chosen word
    region = reached[-1]
    for i in range(len(symbols) - 1, -1, -1):
        region = reached[i].intersect(system.maps[symbols[i]].preimage(system.space, region))
        if region.is_empty:
            raise ChainscopeError(f"backtracking lost the witness at step {i}")
    return Word(tuple(symbols)), region.pick()


def shadow_search(
    system: IFSystem,
    grid: Grid,
    query: ShadowQuery,
    max_frontier: int = DEFAULT_MAX_FRONTIER,
    max_pieces: int = DEFAULT_MAX_PIECES,
) -> ShadowResult:
    """Find box centers within ``epsilon`` of every point of the chain, then a
    true orbit along the same word if there is one."""
    warnings = []
    if grid.diameter > query.epsilon / 4:
        warnings.append(
            f"box diameter {grid.diameter!r} exceeds epsilon/4 = {query.epsilon / 4!r}"
        )
    space = system.space
    points = [space.normalize(p) for p in query.chain.points]
    layers = _layers(system, grid, points, query.epsilon, max_frontier)
    if len(layers) < len(points) or layers[-1].size == 0:
        return ShadowResult(found=False, warnings=tuple(warnings))

    word, boxes = _least_path(system, grid, _prune(system, grid, layers))
    start = refine_along(system, word, [space.ball(p, query.epsilon) for p in points], max_pieces)
    if start is None:
        warnings.append(f"no true orbit follows the box witness {list(word.symbols)}")
        return ShadowResult(
            found=True, word=word, start_box=boxes[0], boxes=boxes, warnings=tuple(warnings)
        )

    orbit = system.orbit(word, start)
    deviation = max(float(space.distance(space.normalize(y), x)) for y, x in zip(orbit, points))
    if deviation > query.epsilon + grid.diameter + REPLAY_TOLERANCE:
        raise ChainscopeError(
            f"witness replay strays {deviation!r} from the chain, limit is {query.epsilon + grid.diameter!r}"
        )
    return ShadowResult(
        found=True,
        word=word,
        start_box=boxes[0],
        boxes=boxes,
        exact=True,
        start_point=space.to_output(np.asarray(start)),
        max_deviation=deviation,
        warnings=tuple(warnings),
    )
