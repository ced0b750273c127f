"""Parser for the section-block config format (see docs/config.md)."""

import re
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

from ...domain.shared.errors import ConfigError
from .run_config import (
    AnalysisSection,
    CapsSection,
    MapLine,
    OdometerSection,
    OutputSection,
    RunConfig,
    RunSection,
    ShadowSection,
    SpaceSection,
)

BUNDLED_CONFIGS = Path(__file__).resolve().parent.parent.parent / "configs"

_HEADER = re.compile(r"^\[([a-z]+(?:\.[a-z]+)?)\]$")
_SINGLE_PAIR = re.compile(r"^([a-z_][a-z0-9_]*)\s*=\s*([^=]*)$")

Parser = Callable[[str], Any]


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise ValueError(f"must be positive, got {text}")
    return value


def _non_negative_float(text: str) -> float:
    value = float(text)
    if value < 0:
        raise ValueError(f"must be non-negative, got {text}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise ValueError(f"must be at least 1, got {text}")
    return value


def _non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise ValueError(f"must be non-negative, got {text}")
    return value


def _int_list(text: str) -> Tuple[int, ...]:
    return tuple(int(part) for part in text.split(",") if part.strip())


def _resolution(text: str) -> Tuple[int, ...]:
    res = tuple(_positive_int(part) for part in text.split(",") if part.strip())
    if len(res) not in (1, 2):
        raise ValueError("resolution takes one value, or two for product spaces")
    return res


def _choice(*options: str) -> Parser:
    def parse(text: str) -> str:
        if text not in options:
            raise ValueError(f"must be one of {', '.join(options)}")
        return text
    return parse


def _ratio(text: str) -> float:
    value = float(text)
    if not 0 < value < 1:
        raise ValueError("must lie strictly between 0 and 1 so the schedule decreases")
    return value


def _ranges(text: str) -> Tuple[Tuple[float, float], ...]:
    out = []
    for part in text.split(","):
        lo, hi = part.split(":")
        out.append((float(lo), float(hi)))
    return tuple(out)


def _pairs(text: str) -> Tuple:
    """``u_lo:u_hi>v_lo:v_hi; ...``, one comma-separated range per axis."""
    pairs = []
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        u, v = chunk.split(">")
        pairs.append((_ranges(u.strip()), _ranges(v.strip())))
    return tuple(pairs)


_SPACE_KEYS: Dict[str, Parser] = {
    "kind": _choice("interval", "circle", "product", "odometer"),
    "lo": float,
    "hi": float,
    "circumference": _positive_float,
    "res": _resolution,
}

_SCHEMA: Dict[str, Dict[str, Parser]] = {
    "space": _SPACE_KEYS,
    "space.left": _SPACE_KEYS,
    "space.right": _SPACE_KEYS,
    "odometer": {"alpha": _int_list, "depth": _non_negative_int, "tail": _positive_int},
    "analysis": {
        "epsilon": _positive_float,
        "mode": _choice("strict", "fattened"),
        "slack": _non_negative_float,
        "eps0": _positive_float,
        "ratio": _ratio,
        "levels": _positive_int,
        "resolution_rule": _positive_float,
        "equivalence": _choice("auto", "true", "false"),
        "k_check": _positive_int,
        "product_check": _non_negative_int,
        "samples": _positive_int,
    },
    "shadow": {
        "epsilon": _positive_float,
        "delta": _positive_float,
        "chains": _non_negative_int,
        "max_length": _positive_int,
        "res": _positive_int,
        "window": _positive_int,
        "pairs": _pairs,
    },
    "caps": {
        "max_maps": _positive_int,
        "max_points": _positive_int,
        "max_product_nodes": _positive_int,
        "frontier": _positive_int,
        "max_boxes": _positive_int,
    },
    "output": {"report": str, "dot": str, "csv": str},
    "run": {"seed": _non_negative_int, "threads": _positive_int},
}

_MAP_SECTIONS = ("maps", "maps.left", "maps.right")

_MAP_KEYS: Dict[str, Dict[str, Parser]] = {
    "rotation": {"angle": float},
    "affine": {"a": float, "b": float},
    "pwl": {"points": lambda text: tuple(
        tuple(float(v) for v in point.split(",")) for point in text.split(";") if point.strip()
    )},
}


def _parse_map(body: str, line_no: int) -> MapLine:
    tokens = body.split()
    if not tokens:
        raise ConfigError("map line needs a kind", line=line_no)
    kind = tokens[0]
    if kind not in _MAP_KEYS:
        raise ConfigError(f"unknown map kind, expected one of {', '.join(_MAP_KEYS)}", line=line_no, key=kind)
    params: Dict[str, Any] = {}
    for token in tokens[1:]:
        if "=" not in token:
            raise ConfigError("map parameters are key=value", line=line_no, key=token)
        key, value = token.split("=", 1)
        if key not in _MAP_KEYS[kind]:
            raise ConfigError(f"unknown parameter for {kind} maps", line=line_no, key=key)
        try:
            params[key] = _MAP_KEYS[kind][key](value)
        except ValueError as e:
            raise ConfigError(f"bad value {value!r}: {e}", line=line_no, key=key) from e
    missing = [k for k in _MAP_KEYS[kind] if k not in params]
    if missing:
        raise ConfigError(f"{kind} map is missing {', '.join(missing)}", line=line_no, key=missing[0])
    if kind == "pwl" and any(len(p) != 2 for p in params["points"]):
        raise ConfigError("pwl points are x,y pairs", line=line_no, key="points")
    return MapLine(kind, params, line_no)


def _pairs_on_line(body: str) -> List[Tuple[str, str]]:
    single = _SINGLE_PAIR.match(body)
    if single:
        return [(single.group(1), single.group(2).strip())]
    pairs = []
    for token in body.split():
        if "=" not in token:
            raise ConfigError(f"expected key=value, got {token!r}")
        key, value = token.split("=", 1)
        pairs.append((key, value))
    return pairs


def parse_config(text: str) -> RunConfig:
    """Parse config text into a validated ``RunConfig``."""
    values: Dict[str, Dict[str, Any]] = {name: {} for name in _SCHEMA}
    maps: Dict[str, List[MapLine]] = {name: [] for name in _MAP_SECTIONS}
    seen_sections = set()
    section: Optional[str] = None

    for line_no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        header = _HEADER.match(body)
        if header:
            section = header.group(1)
            if section not in _SCHEMA and section not in _MAP_SECTIONS:
                raise ConfigError("unknown section", line=line_no, key=section)
            if section in seen_sections:
                raise ConfigError("section appears twice", line=line_no, key=section)
            seen_sections.add(section)
            continue
        if section is None:
            raise ConfigError("setting outside of any [section]", line=line_no)
        if section in _MAP_SECTIONS:
            if not body.startswith("map "):
                raise ConfigError("map sections only hold 'map <kind> key=value ...' lines", line=line_no)
            maps[section].append(_parse_map(body[4:], line_no))
            continue
        try:
            pairs = _pairs_on_line(body)
        except ConfigError as e:
            raise ConfigError(str(e), line=line_no) from e
        for key, value in pairs:
            schema = _SCHEMA[section]
            if key not in schema:
                raise ConfigError(f"unknown key in [{section}]", line=line_no, key=key)
            if key in values[section]:
                raise ConfigError("key set twice", line=line_no, key=key)
            try:
                values[section][key] = schema[key](value)
            except ValueError as e:
                raise ConfigError(f"bad value {value!r}: {e}", line=line_no, key=key) from e

    return _assemble(values, maps)


def _space(values: Dict[str, Any], name: str) -> SpaceSection:
    if "kind" not in values:
        raise ConfigError(f"[{name}] needs a kind", key="kind")
    return SpaceSection(**values)


def _assemble(values: Dict[str, Dict[str, Any]], maps: Dict[str, List[MapLine]]) -> RunConfig:
    space = _space(values["space"], "space")
    left = right = None
    if space.kind == "product":
        left = _space(values["space.left"], "space.left")
        right = _space(values["space.right"], "space.right")
        for factor, name in ((left, "space.left"), (right, "space.right")):
            if factor.kind not in ("interval", "circle"):
                raise ConfigError(f"[{name}] must be an interval or a circle", key="kind")
        if not maps["maps.left"] or not maps["maps.right"]:
            raise ConfigError("product spaces need [maps.left] and [maps.right]", key="maps")
    elif space.kind == "odometer":
        if values["odometer"].get("depth") is None:
            raise ConfigError("odometer spaces need [odometer] depth", key="depth")
    elif not maps["maps"]:
        raise ConfigError("no maps given; add a [maps] section", key="maps")

    analysis = AnalysisSection(**values["analysis"])
    if analysis.slack is not None and analysis.mode != "fattened":
        raise ConfigError("slack only applies in fattened mode", key="slack")
    if (analysis.eps0 is None) != (analysis.levels is None):
        raise ConfigError("a scan schedule needs both eps0 and levels", key="eps0" if analysis.eps0 is None else "levels")

    return RunConfig(
        space=space,
        maps=tuple(maps["maps"]),
        left=left,
        right=right,
        left_maps=tuple(maps["maps.left"]),
        right_maps=tuple(maps["maps.right"]),
        odometer=OdometerSection(**values["odometer"]),
        analysis=analysis,
        shadow=ShadowSection(**values["shadow"]),
        caps=CapsSection(**values["caps"]),
        output=OutputSection(**values["output"]),
        run=RunSection(**values["run"]),
    )


def resolve_config_path(path: Union[str, Path]) -> Path:
    """The given path, or a bundled config of that name."""
    candidate = Path(path)
    if candidate.exists():
        return candidate
    bundled = BUNDLED_CONFIGS / candidate.name
    if bundled.exists():
        return bundled
    if (BUNDLED_CONFIGS / f"{candidate.name}.cfg").exists():
        return BUNDLED_CONFIGS / f"{candidate.name}.cfg"
    raise ConfigError(f"config file not found: {path}")


def load_config(path: Union[str, Path]) -> RunConfig:
    resolved = resolve_config_path(path)
    try:
        text = resolved.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read {resolved}: {e}") from e
    return parse_config(text)


def parse_chain(text: str) -> Tuple[Any, ...]:
    """Chain points from ``--chain``: comma separated, coordinates of a product point joined by ``:``."""
    points: List[Any] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            coords = tuple(float(c) for c in part.split(":"))
        except ValueError as e:
            raise ConfigError(f"cannot parse chain point {part!r}", key="chain") from e
        if len(coords) > 2:
            raise ConfigError(f"chain point {part!r} has more than two coordinates", key="chain")
        points.append(coords[0] if len(coords) == 1 else coords)
    if not points:
        raise ConfigError("chain is empty", key="chain")
    return tuple(points)
