"""Command handlers for the odometer and export commands."""
from argparse import Namespace

from ....application.use_cases.export_use_case import ExportUseCase
from ....application.use_cases.odometer_use_case import OdometerUseCase
from ....application.dtos.run_dto import ExportRequest, OdometerRequest
from .base_command import display, status


class OdometerCommand:
    """Adding-machine arithmetic on digit strings."""

    def __init__(self, use_case: OdometerUseCase):
        self._use_case = use_case

    def execute(self, args: Namespace) -> int:
        request = OdometerRequest(
            alpha=args.alpha,
            depth=getattr(args, 'depth', None),
            tail=getattr(args, 'tail', None),
            x=getattr(args, 'x', None),
            y=getattr(args, 'y', None),
            steps=getattr(args, 'steps', 0) or 0,
            out=getattr(args, 'out', None),
        )
        return display(self._use_case.execute(request))


class ExportCommand:
    """Write the chain graph of a config as DOT and/or CSV."""

    def __init__(self, use_case: ExportUseCase):
        self._use_case = use_case

    def execute(self, args: Namespace) -> int:
        request = ExportRequest(
            config_path=getattr(args, 'config', None),
            seed=getattr(args, 'seed', None),
            threads=getattr(args, 'threads', None),
            out=getattr(args, 'out', None),
            dot=getattr(args, 'dot', None),
            csv=getattr(args, 'csv', None),
            epsilon=getattr(args, 'eps', None),
            resolution=getattr(args, 'res', None),
        )
        status(f"🔍 Exporting the chain graph of {request.config_path}")
        return display(self._use_case.execute(request))
