"""Epsilon refinement scan, odometer factor coding and its semiconjugacy check."""

from typing import Callable, List, Optional, Tuple

import numpy as np

from ..chaingraph.builder import ChainGraphBuilder
from ..chaingraph.slack_mode import SlackMode
from ..ifs.system import DEFAULT_MAX_MAPS, IFSystem
from ..odometer.odometer import Odometer
from ..shared.errors import DiscretizationBreakdown, DomainError, NotTransitiveError, PreconditionError, ResourceCapError
from ..space.grid import BoxGrid, Grid, PointGrid
from ..space.space_kind import FiniteSpace, OneDimensionalSpace, Product, SpaceKind
from .period import analyze, analyze_adjacency
from .results import (
    CHAIN_MIXING,
    CYCLIC_FACTOR,
    INCONCLUSIVE,
    ODOMETER_LIKE,
    FactorCoding,
    ScanLevel,
    ScanResult,
    SemiconjugacyReport,
    Verdict,
)

DEFAULT_RESOLUTION_RULE = 4.0
DEFAULT_MAX_BOXES = 4_194_304
# consecutive levels needed to call the periods stable or growing
STABLE_RUN = 3

Progress = Optional[Callable[[str], None]]


def _axis_resolution(space: OneDimensionalSpace, epsilon: float, rule: float) -> int:
    n = 1
    while space.extent / n > epsilon / rule:
        n *= 2
    return n


def grid_for_epsilon(
    space: SpaceKind,
    epsilon: float,
    rule: float = DEFAULT_RESOLUTION_RULE,
    max_boxes: int = DEFAULT_MAX_BOXES,
) -> Grid:
    """Coarsest power-of-two grid with box width at most ``epsilon / rule``.

    Finite spaces are never re-gridded: every point is its own box.
    """
    if not epsilon > 0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")
    if isinstance(space, FiniteSpace):
        return PointGrid(space)
    if isinstance(space, OneDimensionalSpace):
        resolution = _axis_resolution(space, epsilon, rule)
        n_boxes = resolution
    elif isinstance(space, Product):
        resolution = tuple(_axis_resolution(f, epsilon, rule) for f in space.factors)
        n_boxes = resolution[0] * resolution[1]
    else:
        raise DomainError(f"cannot grid space {space!r}")
    if n_boxes > max_boxes:
        raise ResourceCapError(f"epsilon {epsilon!r} needs {n_boxes} boxes, cap is {max_boxes}")
    return BoxGrid(space, resolution)


def _check_refinement(coarse: ScanLevel, fine: ScanLevel, level: int) -> None:
    if fine.k % coarse.k != 0:
        raise DiscretizationBreakdown(
            f"period {fine.k} at level {level} is not a multiple of {coarse.k} at level {level - 1}",
            level=level,
        )
    # every fine class must sit inside one coarse class
    where = coarse.grid.locate_many(fine.grid.centers())
    pairs = np.unique(np.stack([fine.analysis.class_labels, coarse.analysis.class_labels[where]], axis=1), axis=0)
    if pairs.shape[0] != np.unique(pairs[:, 0]).size:
        raise DiscretizationBreakdown(
            f"cyclic classes at level {level} do not nest in the classes at level {level - 1}",
            level=level,
        )


def _cyclic_classes_mix(
    system: IFSystem,
    last: ScanLevel,
    builder: ChainGraphBuilder,
    mode: SlackMode,
    max_maps: int,
) -> bool:
    """``F^k`` restricted to every cyclic class is transitive with period 1."""
    k = last.k
    power = builder.build(system.iterate(k, max_maps), last.grid, last.epsilon, mode)
    for boxes in last.analysis.cyclic_classes:
        sub = analyze_adjacency(power.restricted(boxes))
        if not (sub.is_chain_transitive and sub.k_epsilon == 1):
            return False
    return True


def _alpha_from_periods(ks: Tuple[int, ...]) -> Tuple[int, ...]:
    alpha = []
    previous = 1
    for k in ks:
        if k > previous:
            alpha.append(k // previous)
            previous = k
    return tuple(alpha)


def epsilon_scan(
    system: IFSystem,
    eps0: float,
    ratio: float,
    levels: int,
    builder: Optional[ChainGraphBuilder] = None,
    resolution_rule: float = DEFAULT_RESOLUTION_RULE,
    mode: Optional[SlackMode] = None,
    max_boxes: int = DEFAULT_MAX_BOXES,
    max_maps: int = DEFAULT_MAX_MAPS,
    progress: Progress = None,
) -> ScanResult:
    """Periods ``k`` at ``epsilon_i = eps0 * ratio**i`` and the resulting verdict.

    Each level is re-gridded so the box width stays below
    ``epsilon / resolution_rule``. Periods must divide each other down the
    scan and cyclic classes must nest; otherwise the discretization broke
    down and the scan aborts.
    """
    if not eps0 > 0:
        raise DomainError(f"eps0 must be positive, got {eps0}")
    if not 0 < ratio < 1:
        raise DomainError(f"ratio must lie in (0, 1), got {ratio}")
    if levels < 1:
        raise DomainError(f"a scan needs at least one level, got {levels}")
    builder = builder or ChainGraphBuilder()
    mode = mode or SlackMode.strict()

    scanned: List[ScanLevel] = []
    for i in range(levels):
        epsilon = eps0 * ratio ** i
        grid = grid_for_epsilon(system.space, epsilon, resolution_rule, max_boxes)
        graph = builder.build(system, grid, epsilon, mode)
        result = analyze(graph, certify=False)
        if not result.is_chain_transitive:
            raise NotTransitiveError(
                f"system is not chain transitive at level {i + 1} (epsilon {epsilon!r}, "
                f"{result.n_sccs} components)",
                level=i + 1,
            )
        level = ScanLevel(
            epsilon=epsilon,
            resolution=grid.resolution,
            box_diameter=grid.diameter,
            k=result.k_epsilon,
            analysis=result,
            grid=grid,
            graph=graph,
        )
        if scanned:
            _check_refinement(scanned[-1], level, i + 1)
        scanned.append(level)
        if progress:
            progress(f"level {i + 1}: epsilon={epsilon:.6g} boxes={grid.n_boxes} k={level.k}")

    ks = tuple(level.k for level in scanned)
    notes: List[str] = []
    tail = ks[-STABLE_RUN:]
    if all(k == 1 for k in ks):
        verdict = Verdict(CHAIN_MIXING)
    elif len(tail) == STABLE_RUN and len(set(tail)) == 1:
        verdict = Verdict(CYCLIC_FACTOR, k=tail[-1])
        if not _cyclic_classes_mix(system, scanned[-1], builder, mode, max_maps):
            notes.append(f"F^{tail[-1]} is not chain mixing on every cyclic class at the finest level")
            verdict = Verdict(INCONCLUSIVE)
    elif len(tail) == STABLE_RUN and all(a < b for a, b in zip(tail, tail[1:])):
        verdict = Verdict(ODOMETER_LIKE, alpha=_alpha_from_periods(ks))
    else:
        if len(ks) < STABLE_RUN:
            notes.append(f"{STABLE_RUN} levels are needed to decide between stable and growing periods")
        verdict = Verdict(INCONCLUSIVE)
    return ScanResult(levels=scanned, verdict=verdict, notes=notes)


def build_factor_coding(scan: ScanResult) -> FactorCoding:
    """Odometer digits of every box of the finest level.

    ``m_i`` is the level-``i`` cyclic class of a box (numbered along the
    orbit of the class of box 0); digit ``i`` is ``(m_i - m_{i-1}) / k_{i-1}``.
    """
    if scan.verdict.kind != ODOMETER_LIKE:
        raise PreconditionError(f"factor coding needs an OdometerLike verdict, got {scan.verdict.describe()}")
    chosen: List[int] = []
    previous = 1
    for index, level in enumerate(scan.levels):
        if level.k > previous:
            chosen.append(index)
            previous = level.k
    finest = scan.levels[-1]
    centers = finest.grid.centers()
    codes = np.zeros((finest.grid.n_boxes, len(chosen)), dtype=np.int64)
    m_prev = np.zeros(finest.grid.n_boxes, dtype=np.int64)
    k_prev = 1
    for digit, index in enumerate(chosen):
        level = scan.levels[index]
        m = level.analysis.class_labels[level.grid.locate_many(centers)]
        step = m - m_prev
        if np.any(np.mod(step, k_prev) != 0):
            raise DiscretizationBreakdown(
                f"classes at level {index + 1} are not refinements of the previous digit",
                level=index + 1,
            )
        codes[:, digit] = np.mod(step // k_prev, level.k // k_prev)
        m_prev, k_prev = m, level.k
    return FactorCoding(
        alpha=scan.verdict.alpha,
        level_indices=tuple(chosen),
        grid=finest.grid,
        codes=codes,
    )


def _code_values(coding: FactorCoding) -> np.ndarray:
    weights = np.cumprod((1,) + tuple(coding.alpha[:-1]), dtype=np.int64) if coding.depth else np.zeros(0, np.int64)
    return coding.codes @ weights


def reflected_coding(coding: FactorCoding) -> FactorCoding:
    """The coding with its finest classes numbered backwards.

    Negative control: for a top period of at least 3 this no longer
    intertwines the system with the odometer.
    """
    size = int(np.prod(coding.alpha, dtype=np.int64))
    values = np.mod(-_code_values(coding), size)
    codes = np.zeros_like(coding.codes)
    for digit, j in enumerate(coding.alpha):
        values, codes[:, digit] = np.divmod(values, j)
    return FactorCoding(coding.alpha, coding.level_indices, coding.grid, codes)


def check_semiconjugacy(
    system: IFSystem,
    coding: FactorCoding,
    odometer: Optional[Odometer] = None,
    samples: int = 1000,
    seed: int = 0,
) -> SemiconjugacyReport:
    """Count sampled (box, symbol) pairs where ``code(f(center)) != g_alpha(code)``."""
    odometer = odometer or Odometer(coding.alpha, coding.depth)
    if odometer.radices != tuple(coding.alpha):
        raise DomainError(f"odometer radices {odometer.radices} do not match coding alpha {coding.alpha}")
    grid = coding.grid
    rng = np.random.default_rng(seed)
    count = min(int(samples), grid.n_boxes)
    boxes = np.sort(rng.choice(grid.n_boxes, size=count, replace=False))

    values = _code_values(coding)
    expected = np.mod(values[boxes] + 1, odometer.size)
    centers = grid.centers()[boxes]
    violations = 0
    first_violation = None
    for symbol in range(system.n_symbols):
        images = system.space.reduce(system.apply_many(symbol, centers))
        landed = values[grid.locate_many(images)]
        bad = np.flatnonzero(landed != expected)
        violations += int(bad.size)
        if bad.size and first_violation is None:
            first_violation = int(boxes[bad[0]])
    return SemiconjugacyReport(samples=count, violations=violations, first_violation=first_violation)
