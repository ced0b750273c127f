"""Dependency injection container for the application."""

from ...infrastructure.repositories.memory_graph_repository import InMemoryGraphRepository
from ...application.use_cases.analyze_use_case import AnalyzeUseCase
from ...application.use_cases.scan_use_case import ScanUseCase
from ...application.use_cases.shadow_use_case import ShadowUseCase
from ...application.use_cases.odometer_use_case import OdometerUseCase
from ...application.use_cases.export_use_case import ExportUseCase
from .commands.analyze_command import AnalyzeCommand
from .commands.scan_command import ScanCommand
from .commands.shadow_command import ShadowCommand
from .commands.commands import ExportCommand, OdometerCommand


class DIContainer:
    """Simple dependency injection container."""

    def __init__(self, default_threads: int = 1):
        # Infrastructure
        self._graph_repository = InMemoryGraphRepository()

        # Application
        self._analyze_use_case = AnalyzeUseCase(self._graph_repository, default_threads)
        self._scan_use_case = ScanUseCase(self._graph_repository, default_threads)
        self._shadow_use_case = ShadowUseCase(self._graph_repository, default_threads)
        self._export_use_case = ExportUseCase(self._graph_repository, default_threads)
        self._odometer_use_case = OdometerUseCase()

        # Presentation
        self._analyze_command = AnalyzeCommand(self._analyze_use_case)
        self._scan_command = ScanCommand(self._scan_use_case)
        self._shadow_command = ShadowCommand(self._shadow_use_case)
        self._export_command = ExportCommand(self._export_use_case)
        self._odometer_command = OdometerCommand(self._odometer_use_case)

    @property
    def graph_repository(self) -> InMemoryGraphRepository:
        return self._graph_repository

    @property
    def analyze_command(self) -> AnalyzeCommand:
        """Get the analyze command handler."""
        return self._analyze_command

    @property
    def scan_command(self) -> ScanCommand:
        """Get the scan command handler."""
        return self._scan_command

    @property
    def shadow_command(self) -> ShadowCommand:
        """Get the shadow command handler."""
        return self._shadow_command

    @property
    def export_command(self) -> ExportCommand:
        """Get the export command handler."""
        return self._export_command

    @property
    def odometer_command(self) -> OdometerCommand:
        """Get the odometer command handler."""
        return self._odometer_command
