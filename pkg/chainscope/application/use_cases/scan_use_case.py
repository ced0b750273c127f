"""Use case for the epsilon-refinement scan."""

from typing import Any, Dict, Optional

from ..dtos.run_dto import RunResponse, ScanRequest
from .analyze_use_case import odometer_factor, scan_from_config
from .run_context import RunContext
from ...domain.analysis.results import ODOMETER_LIKE
from ...domain.chaingraph.graph_repository import GraphRepository
from ...domain.shared.errors import ConfigError, ChainscopeError
from ...infrastructure.reporting.json_report import MAX_LISTED_BOXES


class ScanUseCase:
    """Scan a decreasing epsilon schedule and classify the period sequence."""

    def __init__(self, graph_repository: GraphRepository, default_threads: int = 1):
        self._graph_repository = graph_repository
        self._default_threads = default_threads

    def execute(self, request: ScanRequest) -> RunResponse:
        context: Optional[RunContext] = None
        try:
            context = RunContext(request, self._graph_repository, self._default_threads)
            if not context.config.analysis.has_schedule:
                raise ConfigError("scan needs eps0 and levels in [analysis]", key="eps0")
            system = context.factory.system()
            scan = scan_from_config(context, system)
            finest = scan.levels[-1].grid

            out: Dict[str, Any] = {
                "system": system.describe(),
                "scan": scan.to_dict(list_classes=finest.n_boxes <= MAX_LISTED_BOXES),
                "verdict": scan.verdict.describe(),
                "factor": None,
            }
            for note in scan.notes:
                context.warn(note)
            if scan.verdict.kind == ODOMETER_LIKE:
                out["factor"] = odometer_factor(context, system, scan)

            written = context.export(scan.levels[-1].graph)
            report, report_path = context.finish("scan", out)
            return RunResponse.success_with_report("scan", report, written, report_path)
        except ChainscopeError as e:
            return RunResponse.error("scan", e, context.warnings() if context else None)
