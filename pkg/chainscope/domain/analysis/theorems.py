"""Graph-level checks of the equivalence theorem and the product corollary."""

import math
from typing import Optional

from ..chaingraph.builder import DEFAULT_MAX_PRODUCT_NODES, ChainGraphBuilder
from ..chaingraph.chain_graph import ChainGraph
from ..chaingraph.slack_mode import SlackMode
from ..ifs.system import DEFAULT_MAX_MAPS, IFSystem
from ..shared.errors import DomainError, HypothesisError, ResourceCapError
from ..space.grid import BoxGrid, Grid, grid_adjacency_connected
from .period import DEFAULT_K_CHECK, analyze
from .results import EquivalenceReport, ProductReport
from .scan import DEFAULT_MAX_BOXES

# powers of F checked explicitly for total transitivity
TOTAL_TRANSITIVITY_ORDERS = (2, 3)


def _spread(system: IFSystem, grid: Grid) -> float:
    """How far apart images of neighbouring centers may land under ``system``."""
    return max(m.lipschitz for m in system.maps) * grid.diameter


def power_grid(system: IFSystem, power: IFSystem, grid: Grid, epsilon: float, max_boxes: int = DEFAULT_MAX_BOXES) -> Grid:
    """Grid on which the images of ``power`` are no sparser than those of ``system`` on ``grid``.

    Strict edges of an expanding power leave boxes without in-edges once
    its images spread further apart than epsilon; the grid is refined until
    the spread is back below ``max(epsilon, spread of system)``.
    """
    if not isinstance(grid, BoxGrid):
        return grid
    target = max(epsilon, _spread(system, grid))
    spread = _spread(power, grid)
    if not math.isfinite(spread) or spread <= target:
        return grid
    factor = int(math.ceil(spread / target - 1e-9))
    n_boxes = grid.n_boxes * factor ** len(grid.axes)
    if n_boxes > max_boxes:
        raise ResourceCapError(f"checking {power.name or 'a power'} needs {n_boxes} boxes, cap is {max_boxes}")
    return grid.refined(factor)


def _power_is_transitive(
    system: IFSystem,
    n: int,
    grid: Grid,
    epsilon: float,
    builder: ChainGraphBuilder,
    mode: SlackMode,
    max_maps: int,
    max_boxes: int,
) -> bool:
    power = system.iterate(n, max_maps)
    if mode.is_strict:
        grid = power_grid(system, power, grid, epsilon, max_boxes)
    graph = builder.build(power, grid, epsilon, mode)
    return analyze(graph, certify=False).is_chain_transitive


def product_of(graph: ChainGraph, builder: ChainGraphBuilder, max_nodes: int) -> ProductReport:
    """Transitivity and period of the ``F x F`` graph built from ``graph``."""
    product = builder.product_graph(graph, graph, max_nodes)
    result = analyze(product, certify=False)
    return ProductReport(
        n_max=1,
        premise_holds=True,
        product_transitive=result.is_chain_transitive,
        product_period=result.k_epsilon,
        n_nodes=product.n_boxes,
    )


def verify_equivalence_theorem(
    system: IFSystem,
    grid: Grid,
    epsilon: float,
    builder: Optional[ChainGraphBuilder] = None,
    mode: Optional[SlackMode] = None,
    k_check: int = DEFAULT_K_CHECK,
    max_maps: int = DEFAULT_MAX_MAPS,
    with_product: bool = False,
    max_product_nodes: int = DEFAULT_MAX_PRODUCT_NODES,
    max_boxes: int = DEFAULT_MAX_BOXES,
) -> EquivalenceReport:
    """Recurrent, transitive, totally transitive and mixing, decided on one graph.

    On a connected space the four coincide; a disagreement is reported
    as a discretization finding.
    """
    if not grid_adjacency_connected(grid):
        raise HypothesisError(f"the boxes of {grid!r} do not form a connected space")
    builder = builder or ChainGraphBuilder()
    mode = mode or SlackMode.strict()

    graph = builder.build(system, grid, epsilon, mode)
    result = analyze(graph, certify=True, k_check=k_check)
    transitive = result.is_chain_transitive
    totally = transitive and result.k_epsilon == 1 and all(
        _power_is_transitive(system, n, grid, epsilon, builder, mode, max_maps, max_boxes)
        for n in TOTAL_TRANSITIVITY_ORDERS
    )
    mixing = result.mixing is not None

    product = None
    if with_product and mixing:
        product = product_of(graph, builder, max_product_nodes)
    return EquivalenceReport(
        recurrent=result.is_chain_recurrent,
        transitive=transitive,
        totally_transitive=totally,
        mixing=mixing,
        N=result.mixing.N if result.mixing else None,
        product=product,
    )


def product_transitivity_check(
    system: IFSystem,
    n_max: int,
    grid: Grid,
    epsilon: float,
    builder: Optional[ChainGraphBuilder] = None,
    mode: Optional[SlackMode] = None,
    max_nodes: int = DEFAULT_MAX_PRODUCT_NODES,
    max_maps: int = DEFAULT_MAX_MAPS,
    max_boxes: int = DEFAULT_MAX_BOXES,
) -> ProductReport:
    """If ``F^n`` is transitive for ``n = 1..n_max``, report on ``F x F``."""
    if n_max < 1:
        raise DomainError(f"n_max must be at least 1, got {n_max}")
    builder = builder or ChainGraphBuilder()
    mode = mode or SlackMode.strict()

    for n in range(1, n_max + 1):
        if not _power_is_transitive(system, n, grid, epsilon, builder, mode, max_maps, max_boxes):
            return ProductReport(n_max=n_max, premise_holds=False, failed_order=n)

    graph = builder.build(system, grid, epsilon, mode)
    report = product_of(graph, builder, max_nodes)
    return ProductReport(
        n_max=n_max,
        premise_holds=True,
        product_transitive=report.product_transitive,
        product_period=report.product_period,
        n_nodes=report.n_nodes,
    )
