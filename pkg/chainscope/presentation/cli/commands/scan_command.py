"""Command handler for the scan command."""
from argparse import Namespace

from ....application.use_cases.scan_use_case import ScanUseCase
from ....application.dtos.run_dto import ScanRequest
from .base_command import display, progress_for, status


class ScanCommand:
    """Handles the scan command in the CLI."""

    def __init__(self, use_case: ScanUseCase):
        self._use_case = use_case

    def execute(self, args: Namespace) -> int:
        request = ScanRequest(
            config_path=getattr(args, 'config', None),
            seed=getattr(args, 'seed', None),
            threads=getattr(args, 'threads', None),
            out=getattr(args, 'out', None),
            dot=getattr(args, 'dot', None),
            csv=getattr(args, 'csv', None),
            progress=progress_for(args),
        )

        status(f"🔍 Scanning {request.config_path}")
        response = self._use_case.execute(request)
        if response.success:
            result = response.report["result"]
            ks = ",".join(str(k) for k in result["scan"]["ks"])
            status(f"✅ ks=({ks}) verdict={result['verdict']}")
            factor = result.get("factor")
            if factor:
                status(f"✅ semiconjugacy violations: {factor['semiconjugacy']['violations']}")
        return display(response)
