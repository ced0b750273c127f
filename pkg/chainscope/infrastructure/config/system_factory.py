"""Builds domain objects (spaces, systems, grids) from a parsed config."""

from typing import Optional, Sequence, Tuple

from ...domain.chaingraph.slack_mode import SlackMode
from ...domain.ifs.map_spec import Affine, MapSpec, PiecewiseLinear, Rotation
from ...domain.ifs.system import IFSystem
from ...domain.odometer.digit_space import as_finite_system
from ...domain.odometer.odometer import Odometer
from ...domain.shared.errors import ConfigError, DomainError, ResourceCapError
from ...domain.space.grid import BoxGrid, Grid, PointGrid
from ...domain.space.space_kind import Circle, FiniteSpace, Interval, OneDimensionalSpace, Product, SpaceKind
from .run_config import MapLine, RunConfig, SpaceSection


def _one_dimensional(section: SpaceSection) -> OneDimensionalSpace:
    if section.kind == "interval":
        return Interval(section.lo, section.hi)
    if section.kind == "circle":
        return Circle(section.circumference)
    raise ConfigError(f"expected an interval or circle, got {section.kind}", key="kind")


def _map(line: MapLine) -> MapSpec:
    p = line.params
    try:
        if line.kind == "rotation":
            return Rotation(p["angle"])
        if line.kind == "affine":
            return Affine(p["a"], p["b"])
        return PiecewiseLinear(p["points"])
    except DomainError as e:
        raise ConfigError(str(e), line=line.line, key=line.kind) from e


def _system(space: SpaceKind, lines: Sequence[MapLine], name: str, max_maps: int) -> IFSystem:
    if len(lines) > max_maps:
        raise ResourceCapError(f"{len(lines)} maps exceed the cap of {max_maps}")
    maps = tuple(_map(line) for line in lines)
    try:
        return IFSystem(space, maps, name=name)
    except DomainError as e:
        raise ConfigError(str(e), key="maps") from e


class SystemFactory:
    """Turns a ``RunConfig`` into the system, grid and odometer it describes."""

    def __init__(self, config: RunConfig):
        self.config = config

    def odometer(self) -> Optional[Odometer]:
        section = self.config.odometer
        if section.depth is None:
            return None
        try:
            return Odometer(section.alpha, section.depth, section.tail)
        except DomainError as e:
            raise ConfigError(str(e), key="alpha") from e

    def system(self) -> IFSystem:
        config = self.config
        caps = config.caps
        if config.space.kind == "odometer":
            return as_finite_system(self.odometer(), caps.max_points)
        if config.space.kind == "product":
            left = _system(_one_dimensional(config.left), config.left_maps, "left", caps.max_maps)
            right = _system(_one_dimensional(config.right), config.right_maps, "right", caps.max_maps)
            return left.product(right, caps.max_maps)
        return _system(_one_dimensional(config.space), config.maps, config.space.kind, caps.max_maps)

    def resolution(self) -> Optional[Tuple[int, ...]]:
        config = self.config
        if config.space.kind == "product" and config.space.res is None:
            if config.left.res is None or config.right.res is None:
                return None
            return (config.left.res[0], config.right.res[0])
        return config.space.res

    def grid(self, system: IFSystem, resolution: Optional[int] = None) -> Grid:
        """Grid for the analysis; ``resolution`` overrides the configured one."""
        space = system.space
        if isinstance(space, FiniteSpace):
            return PointGrid(space)
        res = (resolution,) if resolution is not None else self.resolution()
        if res is None:
            raise ConfigError("[space] needs res for this command", key="res")
        if isinstance(space, Product):
            res = res * 2 if len(res) == 1 else res
            n_boxes = res[0] * res[1]
            value = (res[0], res[1])
        else:
            if len(res) != 1:
                raise ConfigError("1-D spaces take a single resolution", key="res")
            n_boxes = res[0]
            value = res[0]
        if n_boxes > self.config.caps.max_boxes:
            raise ResourceCapError(f"grid has {n_boxes} boxes, cap is {self.config.caps.max_boxes}")
        return BoxGrid(space, value)

    def slack_mode(self) -> SlackMode:
        analysis = self.config.analysis
        if analysis.mode == "strict":
            return SlackMode.strict()
        return SlackMode.fattened(analysis.slack)
