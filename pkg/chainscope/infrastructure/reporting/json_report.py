"""Deterministic JSON report envelopes."""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np

from ... import __version__
from ..config.run_config import RunConfig

TOOL_NAME = "chainscope"
# cyclic classes are listed box by box only on small grids
MAX_LISTED_BOXES = 1024


def _plain(value: Any) -> Any:
    """Convert numpy scalars and arrays into JSON-native values."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def build_report(
    command: str,
    config: Optional[RunConfig],
    result: Dict[str, Any],
    warnings: List[str],
) -> Dict[str, Any]:
    """Envelope every command's result with the config echo, seed and version."""
    report: Dict[str, Any] = {
        "tool": TOOL_NAME,
        "version": __version__,
        "command": command,
        "warnings": list(warnings),
        "result": result,
    }
    if config is not None:
        report["seed"] = config.run.seed
        report["config"] = config.to_dict()
        report["config_digest"] = config.digest()
    return _plain(report)


def render_report(report: Dict[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def write_report(report: Dict[str, Any], path: Union[str, Path]) -> Path:
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_report(report), encoding="utf-8")
    return path
