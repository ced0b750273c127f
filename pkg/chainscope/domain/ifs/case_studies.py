"""Reference systems used by the bundled configs and the test-suite."""

from ..space.space_kind import Circle, Interval
from .map_spec import PiecewiseLinear, Rotation
from .system import IFSystem

GOLDEN_ANGLE = 0.38196601125

TENT = PiecewiseLinear(((0.0, 0.0), (0.5, 1.0), (1.0, 0.0)))
# f1(x) = 2x below 1/2 and 1 above; f2(x) = 1 below 1/2 and the tent above
DOUBLING_TO_ONE = PiecewiseLinear(((0.0, 0.0), (0.5, 1.0), (1.0, 1.0)))
ONE_THEN_TENT = PiecewiseLinear(((0.0, 1.0), (0.5, 1.0), (1.0, 0.0)))


def two_rotation_system(alpha: float = 0.25, beta: float = 0.25 + GOLDEN_ANGLE) -> IFSystem:
    """Two rotations of the circle whose angle difference is (nearly) irrational."""
    return IFSystem(Circle(), (Rotation(alpha), Rotation(beta)), name="two-rotations")


def single_rotation_system(angle: float = GOLDEN_ANGLE) -> IFSystem:
    return IFSystem(Circle(), (Rotation(angle),), name=f"rotation({angle!r})")


def tent_map_system() -> IFSystem:
    return IFSystem(Interval(0.0, 1.0), (TENT,), name="tent")


def tent_pair_system() -> IFSystem:
    """``{f1, f2}`` on ``[0, 1]``: neither map is chain mixing, the pair is."""
    return IFSystem(Interval(0.0, 1.0), (DOUBLING_TO_ONE, ONE_THEN_TENT), name="tent-pair")


def dyadic_odometer_system(depth: int = 6) -> IFSystem:
    """The dyadic adding machine ``x -> x + (1, 0, 0, ...)`` truncated to ``depth`` digits."""
    from ..odometer.digit_space import as_finite_system
    from ..odometer.odometer import Odometer

    return as_finite_system(Odometer((2,) * depth, depth))
