"""Per-run wiring shared by the config-driven use cases."""

from typing import Callable, Dict, List, Optional, Tuple

from ..dtos.run_dto import RunRequest
from ...domain.chaingraph.builder import ChainGraphBuilder
from ...domain.chaingraph.chain_graph import ChainGraph
from ...domain.chaingraph.graph_repository import GraphRepository
from ...domain.shared.errors import ConfigError
from ...infrastructure.config.config_parser import load_config
from ...infrastructure.config.run_config import RunConfig
from ...infrastructure.config.system_factory import SystemFactory
from ...infrastructure.reporting.graph_export import export_csv, export_dot
from ...infrastructure.reporting.json_report import build_report, write_report


class RunContext:
    """Effective config, factory and builder for a single command run.

    The graph repository is cleared on entry so that the warnings collected
    at the end belong to this run only.
    """

    def __init__(self, request: RunRequest, repository: GraphRepository, default_threads: int = 1):
        if not request.config_path:
            raise ConfigError("no config given; pass --config <file>")
        config = load_config(request.config_path).with_overrides(
            seed=request.seed,
            threads=request.threads,
            report=request.out,
            dot=request.dot,
            csv=request.csv,
        )
        self.config: RunConfig = config
        self.factory = SystemFactory(config)
        self.repository = repository
        self.repository.clear()
        self.builder = ChainGraphBuilder(
            threads=config.run.threads or default_threads,
            repository=repository,
        )
        self._progress = request.progress
        self._notes: List[str] = []

    def progress(self, message: str) -> None:
        if self._progress:
            self._progress(message)

    @property
    def progress_callback(self) -> Optional[Callable[[str], None]]:
        return self._progress

    def warn(self, message: str) -> None:
        self._notes.append(message)

    def warnings(self) -> List[str]:
        """Messages of every domain event raised on this run's graphs, then local notes."""
        seen: Dict[str, None] = {}
        for graph in self.repository.find_all():
            for event in graph.peek_events():
                seen.setdefault(event.describe(), None)
        for note in self._notes:
            seen.setdefault(note, None)
        return list(seen)

    def require_epsilon(self) -> float:
        epsilon = self.config.analysis.epsilon
        if epsilon is None:
            raise ConfigError("this command needs [analysis] epsilon", key="epsilon")
        return epsilon

    def export(self, graph: ChainGraph) -> List[str]:
        written = []
        if self.config.output.dot:
            written.append(str(export_dot(graph, self.config.output.dot)))
        if self.config.output.csv:
            written.append(str(export_csv(graph, self.config.output.csv)))
        return written

    def finish(self, command: str, result: dict) -> Tuple[dict, Optional[str]]:
        """Build the report and write it when an output path is configured."""
        report = build_report(command, self.config, result, self.warnings())
        path = None
        if self.config.output.report:
            path = str(write_report(report, self.config.output.report))
        return report, path
