"""Use case for exporting a chain graph as DOT and CSV."""

from typing import Optional

from ..dtos.run_dto import ExportRequest, RunResponse
from .run_context import RunContext
from ...domain.chaingraph.graph_repository import GraphRepository
from ...domain.shared.errors import ChainscopeError, ConfigError


class ExportUseCase:
    def __init__(self, graph_repository: GraphRepository, default_threads: int = 1):
        self._graph_repository = graph_repository
        self._default_threads = default_threads

    def execute(self, request: ExportRequest) -> RunResponse:
        context: Optional[RunContext] = None
        try:
            context = RunContext(request, self._graph_repository, self._default_threads)
            output = context.config.output
            if not (output.dot or output.csv):
                raise ConfigError("export needs --dot or --csv (or [output] dot/csv)")
            epsilon = request.epsilon or context.require_epsilon()
            system = context.factory.system()
            grid = context.factory.grid(system, request.resolution)
            graph = context.builder.build(system, grid, epsilon, context.factory.slack_mode())
            written = context.export(graph)
            report, report_path = context.finish("export", {"graph": graph.describe(), "files": written})
            return RunResponse.success_with_report("export", report, written, report_path)
        except ChainscopeError as e:
            return RunResponse.error("export", e, context.warnings() if context else None)
