"""Command handler for the shadow command."""
from argparse import Namespace

from ....application.use_cases.shadow_use_case import ShadowUseCase
from ....application.dtos.run_dto import ShadowRequest
from .base_command import display, progress_for, status


class ShadowCommand:
    """Handles the shadow command in the CLI."""

    def __init__(self, use_case: ShadowUseCase):
        self._use_case = use_case

    def execute(self, args: Namespace) -> int:
        request = ShadowRequest(
            config_path=getattr(args, 'config', None),
            seed=getattr(args, 'seed', None),
            threads=getattr(args, 'threads', None),
            out=getattr(args, 'out', None),
            progress=progress_for(args),
            chain=getattr(args, 'chain', None),
            epsilon=getattr(args, 'eps', None),
            delta=getattr(args, 'delta', None),
            spot_check=getattr(args, 'spot_check', False),
            transfer=getattr(args, 'transfer', False),
        )

        response = self._use_case.execute(request)
        if response.success:
            result = response.report["result"]
            if result["shadow"] is not None:
                found = result["shadow"]["found"]
                status("✅ Chain shadowed" if found else "⚠️ No orbit shadows this chain")
            if result["spot_check"] is not None:
                gate = result["spot_check"]
                icon = "✅" if gate["passed"] else "⚠️"
                status(f"{icon} Spot check: {gate['chains_checked']} chains, passed={gate['passed']} (empirical)")
            if result["transfer"] is not None:
                status(f"✅ Mixing transfer success rate: {result['transfer']['success_rate']:.0%}")
        return display(response)
