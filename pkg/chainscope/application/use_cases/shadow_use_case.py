"""Use case for shadow search, the shadowing spot check and mixing transfer."""

from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..dtos.run_dto import RunResponse, ShadowRequest
from .run_context import RunContext
from ...domain.analysis.period import analyze
from ...domain.chaingraph.graph_repository import GraphRepository
from ...domain.ifs.word import PseudoOrbit
from ...domain.shadowing.search import ShadowQuery, shadow_search
from ...domain.shadowing.spot_check import spot_check
from ...domain.shadowing.transfer import mixing_transfer_check
from ...domain.shared.errors import ChainscopeError, ConfigError
from ...domain.space.grid import Grid
from ...infrastructure.config.config_parser import parse_chain


def _box_pairs(grid: Grid, pairs: Sequence[Tuple[Any, Any]]) -> List[Tuple[List[int], List[int]]]:
    out = []
    for index, (u_bounds, v_bounds) in enumerate(pairs):
        u_boxes = grid.boxes_within(u_bounds)
        v_boxes = grid.boxes_within(v_bounds)
        if not u_boxes or not v_boxes:
            raise ConfigError(f"pair {index} covers no box of the shadow grid", key="pairs")
        out.append((u_boxes, v_boxes))
    return out


class ShadowUseCase:
    """Follow one chain with a true orbit, or test shadowing on random chains."""

    def __init__(self, graph_repository: GraphRepository, default_threads: int = 1):
        self._graph_repository = graph_repository
        self._default_threads = default_threads

    def execute(self, request: ShadowRequest) -> RunResponse:
        context: Optional[RunContext] = None
        try:
            context = RunContext(request, self._graph_repository, self._default_threads)
            config = context.config
            shadow = config.shadow
            epsilon = request.epsilon or shadow.epsilon
            if epsilon is None:
                raise ConfigError("shadow needs --eps or [shadow] epsilon", key="epsilon")
            delta = request.delta or shadow.delta or epsilon / 10
            if not (request.chain or request.spot_check or request.transfer):
                raise ConfigError("nothing to do; pass --chain, --spot-check or --transfer")

            system = context.factory.system()
            grid = context.factory.grid(system, shadow.res)
            frontier = config.caps.frontier
            out: Dict[str, Any] = {
                "system": system.describe(),
                "grid": grid.describe(),
                "epsilon": epsilon,
                "delta": delta,
                "shadow": None,
                "spot_check": None,
                "transfer": None,
            }

            if request.chain:
                chain = PseudoOrbit(parse_chain(request.chain), delta)
                context.progress(f"shadowing a chain of {len(chain)} points")
                result = shadow_search(system, grid, ShadowQuery(chain, epsilon, delta), frontier)
                for warning in result.warnings:
                    context.warn(warning)
                out["shadow"] = result.to_dict()

            if request.transfer and not shadow.pairs:
                raise ConfigError("mixing transfer needs [shadow] pairs", key="pairs")

            gate = None
            if request.spot_check or request.transfer:
                context.progress(f"spot check: {shadow.chains} chains up to length {shadow.max_length}")
                gate = spot_check(
                    system,
                    grid,
                    epsilon,
                    delta,
                    chains=shadow.chains,
                    max_length=shadow.max_length,
                    seed=config.run.seed,
                    max_frontier=frontier,
                )
                out["spot_check"] = gate.to_dict()

            if request.transfer:
                analysis_grid = context.factory.grid(system)
                graph = context.builder.build(
                    system, analysis_grid, context.require_epsilon(), context.factory.slack_mode()
                )
                certificate = analyze(graph, certify=True, k_check=config.analysis.k_check).mixing
                context.progress(f"mixing transfer over {len(shadow.pairs)} pairs")
                out["transfer"] = mixing_transfer_check(
                    system,
                    grid,
                    _box_pairs(grid, shadow.pairs),
                    certificate,
                    gate,
                    window=shadow.window,
                    max_pieces=frontier,
                ).to_dict()

            report, report_path = context.finish("shadow", out)
            return RunResponse.success_with_report("shadow", report, report_path=report_path)
        except ChainscopeError as e:
            return RunResponse.error("shadow", e, context.warnings() if context else None)
