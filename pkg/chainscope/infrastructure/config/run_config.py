"""Typed run configuration, one dataclass per config section."""

import hashlib
import json
from dataclasses import asdict, dataclass, field, replace
from typing import Any, Dict, Optional, Tuple


@dataclass(frozen=True)
class SpaceSection:
    kind: str
    lo: float = 0.0
    hi: float = 1.0
    circumference: float = 1.0
    res: Optional[Tuple[int, ...]] = None


@dataclass(frozen=True)
class MapLine:
    """One ``map <kind> key=value ...`` line, parameters already typed."""

    kind: str
    params: Dict[str, Any]
    line: int = field(default=0, compare=False)

    def to_dict(self) -> Dict[str, Any]:
        params = {k: [list(p) for p in v] if k == "points" else v for k, v in self.params.items()}
        return {"kind": self.kind, **params}


@dataclass(frozen=True)
class OdometerSection:
    alpha: Tuple[int, ...] = ()
    depth: Optional[int] = None
    tail: Optional[int] = None


@dataclass(frozen=True)
class AnalysisSection:
    epsilon: Optional[float] = None
    mode: str = "strict"
    slack: Optional[float] = None
    eps0: Optional[float] = None
    ratio: float = 0.5
    levels: Optional[int] = None
    resolution_rule: float = 4.0
    equivalence: str = "auto"
    k_check: int = 3
    product_check: int = 0
    samples: int = 1000

    @property
    def has_schedule(self) -> bool:
        return self.eps0 is not None and self.levels is not None


@dataclass(frozen=True)
class ShadowSection:
    epsilon: Optional[float] = None
    delta: Optional[float] = None
    chains: int = 100
    max_length: int = 20
    res: Optional[int] = None
    window: int = 3
    pairs: Tuple[Tuple[Tuple[Tuple[float, float], ...], Tuple[Tuple[float, float], ...]], ...] = ()


@dataclass(frozen=True)
class CapsSection:
    max_maps: int = 4096
    max_points: int = 100_000
    max_product_nodes: int = 1_000_000
    frontier: int = 1_000_000
    max_boxes: int = 4_194_304


@dataclass(frozen=True)
class OutputSection:
    report: Optional[str] = None
    dot: Optional[str] = None
    csv: Optional[str] = None


@dataclass(frozen=True)
class RunSection:
    seed: int = 0
    threads: Optional[int] = None


@dataclass(frozen=True)
class RunConfig:
    """Everything a run depends on. ``to_dict`` is the effective config echoed in reports."""

    space: SpaceSection
    maps: Tuple[MapLine, ...] = ()
    left: Optional[SpaceSection] = None
    right: Optional[SpaceSection] = None
    left_maps: Tuple[MapLine, ...] = ()
    right_maps: Tuple[MapLine, ...] = ()
    odometer: OdometerSection = field(default_factory=OdometerSection)
    analysis: AnalysisSection = field(default_factory=AnalysisSection)
    shadow: ShadowSection = field(default_factory=ShadowSection)
    caps: CapsSection = field(default_factory=CapsSection)
    output: OutputSection = field(default_factory=OutputSection)
    run: RunSection = field(default_factory=RunSection)

    def with_overrides(
        self,
        seed: Optional[int] = None,
        threads: Optional[int] = None,
        report: Optional[str] = None,
        dot: Optional[str] = None,
        csv: Optional[str] = None,
    ) -> "RunConfig":
        """Command-line flags win over file values."""
        run = replace(
            self.run,
            seed=self.run.seed if seed is None else seed,
            threads=self.run.threads if threads is None else threads,
        )
        output = replace(
            self.output,
            report=report or self.output.report,
            dot=dot or self.output.dot,
            csv=csv or self.output.csv,
        )
        return replace(self, run=run, output=output)

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "space": _section(self.space),
            "maps": [m.to_dict() for m in self.maps],
            "odometer": _section(self.odometer),
            "analysis": _section(self.analysis),
            "shadow": _section(self.shadow),
            "caps": _section(self.caps),
            "run": {"seed": self.run.seed},
        }
        if self.left is not None:
            out["space.left"] = _section(self.left)
            out["space.right"] = _section(self.right)
            out["maps.left"] = [m.to_dict() for m in self.left_maps]
            out["maps.right"] = [m.to_dict() for m in self.right_maps]
        return out

    def digest(self) -> str:
        """md5 of the canonical JSON form of the effective config."""
        text = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.md5(text.encode("utf-8")).hexdigest()


def _section(section: Any) -> Dict[str, Any]:
    # tuples become lists so the echo is plain JSON
    return json.loads(json.dumps(asdict(section)))
