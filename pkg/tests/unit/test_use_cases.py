"""Unit tests for application use cases."""
import tempfile
import unittest
from pathlib import Path
from unittest.mock import Mock

from chainscope.application.dtos.run_dto import (
    AnalyzeRequest,
    ExportRequest,
    OdometerRequest,
    ScanRequest,
    ShadowRequest,
)
from chainscope.application.use_cases.analyze_use_case import AnalyzeUseCase
from chainscope.application.use_cases.export_use_case import ExportUseCase
from chainscope.application.use_cases.odometer_use_case import OdometerUseCase
from chainscope.application.use_cases.scan_use_case import ScanUseCase
from chainscope.application.use_cases.shadow_use_case import ShadowUseCase
from chainscope.infrastructure.config.config_parser import resolve_config_path
from chainscope.infrastructure.repositories.memory_graph_repository import InMemoryGraphRepository


class ConfigFiles(unittest.TestCase):
    """Temporary config files, cleaned up after each test."""

    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)
        self.repository = InMemoryGraphRepository()

    def tearDown(self):
        self._tmp.cleanup()

    def write_config(self, text, name="run.cfg"):
        path = self.tmp / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    def bundled_with(self, name, extra):
        """A bundled config with ``extra`` appended to its last section."""
        text = resolve_config_path(name).read_text(encoding="utf-8")
        return self.write_config(text + "\n" + extra + "\n", name=f"{name}.cfg")


class TestAnalyzeUseCase(ConfigFiles):
    """Test the analyze pipeline."""

    def setUp(self):
        super().setUp()
        self.use_case = AnalyzeUseCase(self.repository)

    def test_half_rotation(self):
        # Arrange
        request = AnalyzeRequest(config_path="half_rotation")

        # Act
        response = self.use_case.execute(request)

        # Assert
        self.assertTrue(response.success)
        self.assertEqual(response.exit_code, 0)
        report = response.report
        self.assertEqual(report["tool"], "chainscope")
        self.assertEqual(report["command"], "analyze")
        self.assertEqual(report["seed"], 0)
        self.assertEqual(len(report["config_digest"]), 32)
        result = report["result"]
        self.assertTrue(result["transitive"])
        self.assertEqual(result["k"], 1)
        self.assertIsNotNone(result["mixing_N"])
        self.assertTrue(result["equivalence"]["agree"])
        self.assertEqual(result["verdict"], "ChainMixing")
        self.assertIsNone(result["factor"])

    def test_overrides_reach_the_graph(self):
        request = AnalyzeRequest(config_path="half_rotation", epsilon=0.05, resolution=8, seed=3)

        response = self.use_case.execute(request)

        result = response.report["result"]
        self.assertEqual(result["epsilon"], 0.05)
        self.assertEqual(result["resolution"], 8)
        self.assertFalse(result["transitive"])
        self.assertEqual(response.report["seed"], 3)

    def test_odometer_skips_equivalence(self):
        """Point grids are not connected, so the auto setting leaves it out."""
        response = self.use_case.execute(AnalyzeRequest(config_path="dyadic_odometer"))

        result = response.report["result"]
        self.assertTrue(response.success)
        self.assertIsNone(result["equivalence"])
        self.assertEqual(result["k"], 2)
        self.assertIsNone(result["mixing_N"])
        self.assertEqual(result["verdict"], "OdometerLike(2,2,2,2,2)")
        self.assertEqual(result["factor"]["semiconjugacy"]["violations"], 0)

    def test_forced_equivalence_on_odometer_is_refused(self):
        path = self.bundled_with("dyadic_odometer", "equivalence = true")

        response = self.use_case.execute(AnalyzeRequest(config_path=path))

        self.assertFalse(response.success)
        self.assertEqual(response.exit_code, 2)
        self.assertIn("HypothesisError", response.message)

    def test_progress_callback(self):
        progress = Mock()

        self.use_case.execute(AnalyzeRequest(config_path="half_rotation", progress=progress))

        self.assertTrue(progress.called)
        self.assertIn("building graph", progress.call_args_list[0][0][0])

    def test_report_written_to_file(self):
        out = str(self.tmp / "reports" / "analyze.json")

        response = self.use_case.execute(AnalyzeRequest(config_path="half_rotation", out=out))

        self.assertEqual(response.report_path, out)
        self.assertTrue(Path(out).exists())

    def test_config_error_exits_one(self):
        path = self.write_config("[space]\nkind = sphere\n")

        response = self.use_case.execute(AnalyzeRequest(config_path=path))

        self.assertFalse(response.success)
        self.assertEqual(response.exit_code, 1)
        self.assertIn("line 2, key 'kind'", response.message)

    def test_missing_config(self):
        response = self.use_case.execute(AnalyzeRequest())

        self.assertEqual(response.exit_code, 1)
        self.assertIn("ConfigError", response.message)

    def test_box_cap_exits_three(self):
        path = self.bundled_with("half_rotation", "[caps]\nmax_boxes = 32")

        response = self.use_case.execute(AnalyzeRequest(config_path=path))

        self.assertFalse(response.success)
        self.assertEqual(response.exit_code, 3)
        self.assertIn("ResourceCapError", response.message)


class TestScanUseCase(ConfigFiles):
    """Test the scan and the odometer factor it reports."""

    def setUp(self):
        super().setUp()
        self.use_case = ScanUseCase(self.repository)

    def test_dyadic_odometer(self):
        # Act
        response = self.use_case.execute(ScanRequest(config_path="dyadic_odometer"))

        # Assert
        self.assertTrue(response.success)
        result = response.report["result"]
        self.assertEqual(result["scan"]["ks"], [2, 4, 8, 16, 32])
        self.assertEqual(result["verdict"], "OdometerLike(2,2,2,2,2)")
        factor = result["factor"]
        self.assertEqual(factor["alpha"], [2, 2, 2, 2, 2])
        self.assertEqual(factor["levels"], [1, 2, 3, 4, 5])
        self.assertEqual(factor["semiconjugacy"], {"samples": 64, "violations": 0, "first_violation": None})
        self.assertEqual(factor["reflected_control"]["violations"], 64)
        self.assertEqual(len(factor["codes"]), 64)

    def test_cyclic_factor(self):
        response = self.use_case.execute(ScanRequest(config_path="odometer_cyclic"))

        result = response.report["result"]
        self.assertEqual(result["verdict"], "CyclicFactor(2)")
        self.assertIsNone(result["factor"])

    def test_scan_needs_schedule(self):
        path = self.write_config("[space]\nkind = circle\nres = 16\n[maps]\nmap rotation angle=0.5\n")

        response = self.use_case.execute(ScanRequest(config_path=path))

        self.assertEqual(response.exit_code, 1)
        self.assertIn("eps0", response.message)

    def test_non_transitive_level_exits_two(self):
        text = "[space]\nkind = interval\nres = 64\n[maps]\nmap pwl points=0,0;0.5,1;1,1\n"
        path = self.write_config(text + "[analysis]\neps0 = 0.1\nlevels = 3\n")

        response = self.use_case.execute(ScanRequest(config_path=path))

        self.assertFalse(response.success)
        self.assertEqual(response.exit_code, 2)
        self.assertIn("NotTransitiveError", response.message)


class TestShadowUseCase(ConfigFiles):
    """Test shadow search and the transfer gate through the use case."""

    def setUp(self):
        super().setUp()
        self.use_case = ShadowUseCase(self.repository)

    def test_chain_is_shadowed(self):
        # Arrange
        request = ShadowRequest(config_path="tent_pair", chain="0.1,0.2,0.4,0.8")

        # Act
        response = self.use_case.execute(request)

        # Assert
        self.assertTrue(response.success)
        result = response.report["result"]
        self.assertEqual(result["epsilon"], 0.1)
        self.assertEqual(result["delta"], 0.01)
        self.assertTrue(result["shadow"]["found"])
        self.assertEqual(result["shadow"]["word"], [0, 0, 0])
        self.assertIsNone(result["spot_check"])
        self.assertIsNone(result["transfer"])

    def test_needs_epsilon(self):
        response = self.use_case.execute(ShadowRequest(config_path="half_rotation", chain="0.1,0.6"))

        self.assertEqual(response.exit_code, 1)
        self.assertIn("epsilon", response.message)

    def test_needs_something_to_do(self):
        response = self.use_case.execute(ShadowRequest(config_path="tent_pair"))

        self.assertEqual(response.exit_code, 1)
        self.assertIn("nothing to do", response.message)

    def test_transfer_needs_pairs(self):
        response = self.use_case.execute(
            ShadowRequest(config_path="half_rotation", epsilon=0.1, transfer=True)
        )

        self.assertEqual(response.exit_code, 1)
        self.assertIn("pairs", response.message)

    def test_failed_gate_exits_two(self):
        """Two rotations cannot follow a slow drift, so the transfer is refused."""
        response = self.use_case.execute(ShadowRequest(config_path="rotations", transfer=True))

        self.assertFalse(response.success)
        self.assertEqual(response.exit_code, 2)
        self.assertIn("ShadowingGateError", response.message)

    def test_spot_check_failure_is_reported_not_raised(self):
        response = self.use_case.execute(ShadowRequest(config_path="rotations", spot_check=True))

        self.assertTrue(response.success)
        gate = response.report["result"]["spot_check"]
        self.assertFalse(gate["passed"])
        self.assertTrue(gate["empirical"])


class TestExportUseCase(ConfigFiles):
    """Test DOT and CSV export."""

    def setUp(self):
        super().setUp()
        self.use_case = ExportUseCase(self.repository)

    def test_writes_both_files(self):
        # Arrange
        dot = str(self.tmp / "graph.dot")
        csv = str(self.tmp / "edges.csv")

        # Act
        response = self.use_case.execute(ExportRequest(config_path="half_rotation", dot=dot, csv=csv, resolution=16))

        # Assert
        self.assertTrue(response.success)
        self.assertEqual(response.written, [dot, csv])
        graph = response.report["result"]["graph"]
        self.assertEqual(graph["n_boxes"], 16)
        rows = Path(csv).read_text(encoding="utf-8").splitlines()[1:]
        self.assertEqual(len(rows), graph["n_edges"])
        self.assertEqual(Path(dot).read_text(encoding="utf-8").count(" -> "), graph["n_edges"])

    def test_needs_an_output(self):
        response = self.use_case.execute(ExportRequest(config_path="half_rotation"))

        self.assertEqual(response.exit_code, 1)
        self.assertIn("--dot or --csv", response.message)


class TestOdometerUseCase(unittest.TestCase):
    """Test digit-string arithmetic from the command line."""

    def setUp(self):
        self.use_case = OdometerUseCase()

    def test_sum_distance_and_orbit(self):
        # Arrange
        request = OdometerRequest(alpha="2,3,2", x="1,2,0", y="1,1,1", steps=4)

        # Act
        response = self.use_case.execute(request)

        # Assert
        self.assertTrue(response.success)
        result = response.report["result"]
        self.assertEqual(result["size"], 12)
        self.assertEqual(result["index_of_x"], 5)
        self.assertEqual(result["g_alpha_x"], "0,0,1")
        self.assertEqual(result["x_plus_y"], "0,1,0")
        self.assertEqual(result["d_alpha"], 0.375)
        self.assertEqual(result["orbit"], ["1,2,0", "0,0,1", "1,0,1", "0,1,1"])
        self.assertNotIn("config_digest", response.report)

    def test_defaults_to_zero(self):
        response = self.use_case.execute(OdometerRequest(alpha="2", depth=3, tail=3))

        result = response.report["result"]
        self.assertEqual(result["radices"], [2, 3, 3])
        self.assertEqual(result["x"], "0,0,0")
        self.assertEqual(result["g_alpha_x"], "1,0,0")

    def test_bad_inputs_exit_one(self):
        for request in (
            OdometerRequest(alpha="2,x"),
            OdometerRequest(alpha="1,2"),
            OdometerRequest(alpha="2,2", x="2,0"),
            OdometerRequest(alpha="2,2", x="1"),
            OdometerRequest(alpha="2,2", steps=-1),
        ):
            with self.subTest(request=request):
                response = self.use_case.execute(request)
                self.assertFalse(response.success)
                self.assertEqual(response.exit_code, 1)


if __name__ == '__main__':
    unittest.main()
