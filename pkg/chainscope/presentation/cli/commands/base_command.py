"""Shared display logic for the command handlers."""
import sys
from argparse import Namespace

from ....application.dtos.run_dto import RunResponse
from ....infrastructure.reporting.json_report import render_report


def status(message: str) -> None:
    """Status lines go to stderr so stdout carries only the JSON report."""
    print(message, file=sys.stderr)


def progress_for(args: Namespace):
    if getattr(args, 'verbose', False):
        return lambda message: status(f"🔍 {message}")
    return None


def display(response: RunResponse) -> int:
    """Print the outcome of a run and return its exit code."""
    for warning in response.warnings:
        status(f"⚠️ {warning}")
    if not response.success:
        status(f"❌ {response.message}")
        if response.exit_code == 3:
            status("💡 Raise the matching limit in the [caps] section if the run is meant to be this large")
        return response.exit_code

    for path in response.written:
        status(f"✅ Wrote {path}")
    if response.report_path:
        status(f"✅ Report written to {response.report_path}")
    else:
        sys.stdout.write(render_report(response.report))
    return 0
