"""Request and response DTOs shared by every chainscope command."""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

from ...domain.shared.errors import ChainscopeError

ProgressCallback = Optional[Callable[[str], None]]


@dataclass
class RunRequest:
    """Options every config-driven command takes."""

    config_path: Optional[str] = None
    seed: Optional[int] = None
    threads: Optional[int] = None
    out: Optional[str] = None
    dot: Optional[str] = None
    csv: Optional[str] = None
    progress: ProgressCallback = None


@dataclass
class AnalyzeRequest(RunRequest):
    """Analyze one graph; ``epsilon`` and ``resolution`` override the config."""

    epsilon: Optional[float] = None
    resolution: Optional[int] = None


@dataclass
class ScanRequest(RunRequest):
    pass


@dataclass
class ShadowRequest(RunRequest):
    """Shadow one chain (``chain`` given) and/or run the spot check and transfer."""

    chain: Optional[str] = None
    epsilon: Optional[float] = None
    delta: Optional[float] = None
    spot_check: bool = False
    transfer: bool = False


@dataclass
class ExportRequest(RunRequest):
    epsilon: Optional[float] = None
    resolution: Optional[int] = None


@dataclass
class OdometerRequest:
    """Digit-string arithmetic on a truncated odometer."""

    alpha: str
    depth: Optional[int] = None
    tail: Optional[int] = None
    x: Optional[str] = None
    y: Optional[str] = None
    steps: int = 0
    out: Optional[str] = None


@dataclass
class RunResponse:
    """Outcome of a command: the JSON report plus where it went."""

    success: bool
    command: str
    exit_code: int = 0
    report: Optional[Dict[str, Any]] = None
    warnings: List[str] = field(default_factory=list)
    written: List[str] = field(default_factory=list)
    report_path: Optional[str] = None
    message: Optional[str] = None

    @classmethod
    def success_with_report(
        cls,
        command: str,
        report: Dict[str, Any],
        written: Optional[List[str]] = None,
        report_path: Optional[str] = None,
    ) -> "RunResponse":
        return cls(
            success=True,
            command=command,
            report=report,
            warnings=list(report.get("warnings", [])),
            written=written or [],
            report_path=report_path,
        )

    @classmethod
    def error(cls, command: str, error: Exception, warnings: Optional[List[str]] = None) -> "RunResponse":
        """Failure response; the exit code follows the error class."""
        exit_code = error.exit_code if isinstance(error, ChainscopeError) else 1
        return cls(
            success=False,
            command=command,
            exit_code=exit_code,
            warnings=warnings or [],
            message=f"{error.__class__.__name__}: {error}",
        )
