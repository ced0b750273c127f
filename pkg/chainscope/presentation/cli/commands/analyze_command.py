"""Command handler for the analyze command."""
from argparse import Namespace

from ....application.use_cases.analyze_use_case import AnalyzeUseCase
from ....application.dtos.run_dto import AnalyzeRequest
from .base_command import display, progress_for, status


class AnalyzeCommand:
    """Handles the analyze command in the CLI."""

    def __init__(self, use_case: AnalyzeUseCase):
        self._use_case = use_case

    def execute(self, args: Namespace) -> int:
        """
        Execute the analyze command.

        Args:
            args: Parsed command line arguments

        Returns:
            The process exit code
        """
        request = AnalyzeRequest(
            config_path=getattr(args, 'config', None),
            seed=getattr(args, 'seed', None),
            threads=getattr(args, 'threads', None),
            out=getattr(args, 'out', None),
            dot=getattr(args, 'dot', None),
            csv=getattr(args, 'csv', None),
            progress=progress_for(args),
            epsilon=getattr(args, 'eps', None),
            resolution=getattr(args, 'res', None),
        )

        status(f"🔍 Analyzing {request.config_path}")
        response = self._use_case.execute(request)
        if response.success:
            result = response.report["result"]
            summary = f"transitive={result['transitive']} k={result['k']} N={result['mixing_N']}"
            if result["verdict"]:
                summary += f" verdict={result['verdict']}"
            status(f"✅ {summary}")
        return display(response)
