"""Use case for the full analysis pipeline of one config."""

from typing import Any, Dict, Optional

from ..dtos.run_dto import AnalyzeRequest, RunResponse
from .run_context import RunContext
from ...domain.analysis.period import analyze
from ...domain.analysis.results import ODOMETER_LIKE, ScanResult
from ...domain.analysis.scan import (
    build_factor_coding,
    check_semiconjugacy,
    epsilon_scan,
    reflected_coding,
)
from ...domain.analysis.theorems import product_transitivity_check, verify_equivalence_theorem
from ...domain.chaingraph.graph_repository import GraphRepository
from ...domain.shared.errors import ChainscopeError
from ...domain.space.grid import grid_adjacency_connected
from ...infrastructure.reporting.json_report import MAX_LISTED_BOXES


def scan_from_config(context: RunContext, system) -> ScanResult:
    """Run the epsilon scan described by the ``[analysis]`` schedule."""
    analysis = context.config.analysis
    caps = context.config.caps
    return epsilon_scan(
        system,
        analysis.eps0,
        analysis.ratio,
        analysis.levels,
        builder=context.builder,
        resolution_rule=analysis.resolution_rule,
        mode=context.factory.slack_mode(),
        max_boxes=caps.max_boxes,
        max_maps=caps.max_maps,
        progress=context.progress_callback,
    )


def odometer_factor(context: RunContext, system, scan: ScanResult) -> Dict[str, Any]:
    """Factor coding, semiconjugacy count and the reflected-coding control."""
    coding = build_factor_coding(scan)
    samples = context.config.analysis.samples
    seed = context.config.run.seed
    report = check_semiconjugacy(system, coding, samples=samples, seed=seed)
    control = None
    if coding.depth and scan.levels[-1].k >= 3:
        control = check_semiconjugacy(system, reflected_coding(coding), samples=samples, seed=seed).to_dict()
    out: Dict[str, Any] = {
        "alpha": list(coding.alpha),
        "depth": coding.depth,
        "levels": [i + 1 for i in coding.level_indices],
        "semiconjugacy": report.to_dict(),
        "reflected_control": control,
    }
    if coding.grid.n_boxes <= MAX_LISTED_BOXES:
        out["codes"] = coding.codes.tolist()
    return out


class AnalyzeUseCase:
    """Build the chain graph, analyze it and run every configured check."""

    def __init__(self, graph_repository: GraphRepository, default_threads: int = 1):
        self._graph_repository = graph_repository
        self._default_threads = default_threads

    def execute(self, request: AnalyzeRequest) -> RunResponse:
        """
        Execute the analyze pipeline.

        1. Load the config and build the system and grid
        2. Build and analyze the chain graph
        3. Equivalence and product checks when configured
        4. Epsilon scan (and odometer factor) when a schedule is given
        """
        context: Optional[RunContext] = None
        try:
            context = RunContext(request, self._graph_repository, self._default_threads)
            config = context.config
            factory = context.factory
            epsilon = request.epsilon or context.require_epsilon()
            system = factory.system()
            grid = factory.grid(system, request.resolution)
            mode = factory.slack_mode()

            context.progress(f"building graph: {grid.n_boxes} boxes, {system.n_symbols} maps, epsilon={epsilon}")
            graph = context.builder.build(system, grid, epsilon, mode)
            result = analyze(graph, certify=True, k_check=config.analysis.k_check)
            context.progress(
                f"analysis: {result.n_sccs} components, k={result.k_epsilon}, "
                f"N={result.mixing.N if result.mixing else None}"
            )

            out: Dict[str, Any] = {
                "system": system.describe(),
                "grid": grid.describe(),
                "graph": graph.describe(),
                "epsilon": epsilon,
                "resolution": grid.resolution,
                "transitive": result.is_chain_transitive,
                "recurrent": result.is_chain_recurrent,
                "k": result.k_epsilon,
                "mixing_N": result.mixing.N if result.mixing else None,
                "analysis": result.to_dict(list_classes=grid.n_boxes <= MAX_LISTED_BOXES),
                "equivalence": None,
                "product_check": None,
                "scan": None,
                "factor": None,
                "verdict": None,
            }

            wanted = config.analysis.equivalence
            if wanted == "true" or (wanted == "auto" and grid_adjacency_connected(grid)):
                context.progress("checking the equivalence theorem")
                equivalence = verify_equivalence_theorem(
                    system,
                    grid,
                    epsilon,
                    builder=context.builder,
                    mode=mode,
                    k_check=config.analysis.k_check,
                    max_maps=config.caps.max_maps,
                    with_product=config.analysis.product_check > 0,
                    max_product_nodes=config.caps.max_product_nodes,
                    max_boxes=config.caps.max_boxes,
                )
                if not equivalence.agree:
                    context.warn("equivalence theorem booleans disagree at this resolution (discretization finding)")
                out["equivalence"] = equivalence.to_dict()

            if config.analysis.product_check > 0:
                context.progress(f"product check up to n={config.analysis.product_check}")
                out["product_check"] = product_transitivity_check(
                    system,
                    config.analysis.product_check,
                    grid,
                    epsilon,
                    builder=context.builder,
                    mode=mode,
                    max_nodes=config.caps.max_product_nodes,
                    max_maps=config.caps.max_maps,
                    max_boxes=config.caps.max_boxes,
                ).to_dict()

            if config.analysis.has_schedule:
                scan = scan_from_config(context, system)
                out["scan"] = scan.to_dict()
                out["verdict"] = scan.verdict.describe()
                if scan.verdict.kind == ODOMETER_LIKE:
                    out["factor"] = odometer_factor(context, system, scan)

            written = context.export(graph)
            report, report_path = context.finish("analyze", out)
            return RunResponse.success_with_report("analyze", report, written, report_path)
        except ChainscopeError as e:
            return RunResponse.error("analyze", e, context.warnings() if context else None)
