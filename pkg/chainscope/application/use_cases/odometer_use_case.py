"""Use case for adding-machine arithmetic from the command line."""

from typing import Any, Dict

from ..dtos.run_dto import OdometerRequest, RunResponse
from ...domain.odometer.odometer import DigitString, Odometer
from ...domain.shared.errors import ChainscopeError, ConfigError
from ...infrastructure.reporting.json_report import build_report, write_report

# orbit listings longer than this are cut
MAX_ORBIT_STEPS = 1024


class OdometerUseCase:
    """Evaluate d_alpha, addition and the +1 map on digit strings."""

    def execute(self, request: OdometerRequest) -> RunResponse:
        try:
            alpha = tuple(int(part) for part in request.alpha.split(",") if part.strip())
        except ValueError:
            return RunResponse.error("odometer", ConfigError(f"cannot parse alpha {request.alpha!r}", key="alpha"))
        try:
            if request.steps < 0 or request.steps > MAX_ORBIT_STEPS:
                raise ConfigError(f"steps must lie in 0..{MAX_ORBIT_STEPS}", key="steps")
            depth = len(alpha) if request.depth is None else request.depth
            odometer = Odometer(alpha, depth, request.tail)
            out: Dict[str, Any] = {
                "radices": list(odometer.radices),
                "depth": odometer.depth,
                "size": odometer.size,
            }
            x = DigitString.from_csv(request.x) if request.x else odometer.zero()
            odometer.check(x)
            out["x"] = x.to_csv()
            out["index_of_x"] = odometer.index_of(x)
            out["g_alpha_x"] = odometer.g_alpha(x).to_csv()
            if request.y:
                y = DigitString.from_csv(request.y)
                out["y"] = y.to_csv()
                out["d_alpha"] = odometer.d_alpha(x, y)
                out["x_plus_y"] = odometer.add(x, y).to_csv()
            if request.steps:
                out["orbit"] = [s.to_csv() for s in odometer.orbit(x, request.steps)]

            report = build_report("odometer", None, out, [])
            report_path = str(write_report(report, request.out)) if request.out else None
            return RunResponse.success_with_report("odometer", report, report_path=report_path)
        except ChainscopeError as e:
            return RunResponse.error("odometer", e)
