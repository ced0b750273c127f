"""Randomized empirical check of the shadowing property."""

import math
from dataclasses import dataclass
from typing import Any, List, Optional, Tuple

import numpy as np

from ..ifs.system import IFSystem
from ..ifs.word import PseudoOrbit
from ..shared.errors import DomainError, PreconditionError
from ..space.grid import Grid
from ..space.space_kind import FiniteSpace
from .search import DEFAULT_MAX_FRONTIER, ShadowQuery, shadow_search

DEFAULT_CHAINS = 100
DEFAULT_MAX_LENGTH = 20


@dataclass(frozen=True)
class SpotCheckReport:
    """Outcome of shadowing a batch of random chains plus one drift chain.

    This is evidence, not proof: a pass means every sampled chain was
    shadowed.
    """

    epsilon: float
    delta: float
    chains_checked: int
    passed: bool
    failing_kind: Optional[str] = None
    failing_chain: Optional[Tuple[Any, ...]] = None

    def to_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "delta": self.delta,
            "chains_checked": self.chains_checked,
            "passed": self.passed,
            "failing_kind": self.failing_kind,
            "failing_chain": list(self.failing_chain) if self.failing_chain is not None else None,
            "empirical": True,
        }


def random_chain(system: IFSystem, length: int, delta: float, rng: np.random.Generator) -> PseudoOrbit:
    """``length`` points, each strictly within ``delta`` of an image of the previous one."""
    space = system.space
    points = [space.sample(rng)]
    for _ in range(length - 1):
        symbol = int(rng.integers(system.n_symbols))
        points.append(space.perturb(system.apply(symbol, points[-1]), delta, rng))
    return PseudoOrbit(tuple(points), delta)


def drift_chain(system: IFSystem, grid: Grid, epsilon: float, delta: float) -> PseudoOrbit:
    """Follow map 0 from box 0, pushing every step forward by ``delta / 2``.

    A box path may gain up to ``h / 2`` a step on the true orbit, so the chain
    runs until the drift net of that gain exceeds ``2 (epsilon + h)``.
    """
    step = delta / 2
    gain = step - grid.diameter / 2
    if not gain > 0:
        raise PreconditionError(
            f"the drift chain needs delta above the box diameter, got delta={delta!r} and h={grid.diameter!r}"
        )
    length = math.ceil(2 * (epsilon + grid.diameter) / gain) + 2
    points = [grid.center(0)]
    for _ in range(length - 1):
        points.append(system.space.nudge(system.apply(0, points[-1]), step))
    return PseudoOrbit(tuple(points), delta)


def spot_check(
    system: IFSystem,
    grid: Grid,
    epsilon: float,
    delta: Optional[float] = None,
    chains: int = DEFAULT_CHAINS,
    max_length: int = DEFAULT_MAX_LENGTH,
    seed: int = 0,
    max_frontier: int = DEFAULT_MAX_FRONTIER,
) -> SpotCheckReport:
    """Shadow ``chains`` random delta-chains and a drift chain at distance ``epsilon``.

    ``delta`` defaults to ``epsilon / 10``. Finite spaces get no drift chain.
    """
    delta = epsilon / 10 if delta is None else delta
    if not delta > 0:
        raise DomainError(f"delta must be positive, got {delta}")
    if max_length < 2:
        raise DomainError(f"chains need at least two points, got max_length={max_length}")
    rng = np.random.default_rng(seed)

    batch: List[Tuple[str, PseudoOrbit]] = []
    for _ in range(chains):
        length = int(rng.integers(2, max_length + 1))
        batch.append(("random", random_chain(system, length, delta, rng)))
    if not isinstance(system.space, FiniteSpace):
        batch.append(("drift", drift_chain(system, grid, epsilon, delta)))

    for checked, (kind, chain) in enumerate(batch, start=1):
        result = shadow_search(system, grid, ShadowQuery(chain, epsilon, delta), max_frontier)
        if not result.found:
            return SpotCheckReport(epsilon, delta, checked, False, kind, chain.points)
    return SpotCheckReport(epsilon, delta, len(batch), True)
