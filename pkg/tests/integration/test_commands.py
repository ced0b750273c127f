"""Integration tests for the chainscope commands, end to end through the CLI."""
import json
import tempfile
import unittest
from argparse import Namespace
from io import StringIO
from pathlib import Path
from unittest.mock import patch

from chainscope.cli import main
from chainscope.infrastructure.config.config_parser import resolve_config_path
from chainscope.presentation.cli.container import DIContainer
from chainscope.presentation.cli.dispatcher import CommandDispatcher


def run_cli(argv):
    """Run ``main`` and return (exit code, stdout text, status lines)."""
    with patch('sys.stdout', new_callable=StringIO) as stdout:
        with patch('builtins.print') as mock_print:
            code = main(argv)
    lines = [call.args[0] for call in mock_print.call_args_list if call.args]
    return code, stdout.getvalue(), lines


class CommandTestCase(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)

    def tearDown(self):
        self._tmp.cleanup()

    def bundled_with(self, name, extra):
        text = resolve_config_path(name).read_text(encoding="utf-8")
        path = self.tmp / f"{name}.cfg"
        path.write_text(text + "\n" + extra + "\n", encoding="utf-8")
        return str(path)


class TestAnalyzeCommand(CommandTestCase):
    """Test the analyze command."""

    def test_report_goes_to_stdout(self):
        # Act
        code, stdout, lines = run_cli(["analyze", "-c", "half_rotation"])

        # Assert
        self.assertEqual(code, 0)
        report = json.loads(stdout)
        self.assertEqual(report["command"], "analyze")
        self.assertTrue(report["result"]["transitive"])
        self.assertIn("🔍 Analyzing half_rotation", lines)
        self.assertTrue(any(line.startswith("✅ transitive=True k=1") for line in lines))

    def test_same_report_on_rerun_and_thread_count(self):
        """The report depends on the config and seed only."""
        first = str(self.tmp / "first.json")
        second = str(self.tmp / "second.json")
        threaded = str(self.tmp / "threaded.json")

        run_cli(["analyze", "-c", "rotations", "--threads", "1", "-o", first])
        run_cli(["analyze", "-c", "rotations", "--threads", "1", "-o", second])
        code, stdout, lines = run_cli(["analyze", "-c", "rotations", "--threads", "4", "-o", threaded])

        self.assertEqual(code, 0)
        self.assertEqual(stdout, "")
        self.assertIn(f"✅ Report written to {threaded}", lines)
        text = Path(first).read_bytes()
        self.assertEqual(text, Path(second).read_bytes())
        self.assertEqual(text, Path(threaded).read_bytes())

    def test_bad_config_exits_one(self):
        path = self.tmp / "bad.cfg"
        path.write_text("[space]\nkind = circle\ncolour = red\n", encoding="utf-8")

        code, stdout, lines = run_cli(["analyze", "-c", str(path)])

        self.assertEqual(code, 1)
        self.assertEqual(stdout, "")
        self.assertTrue(any("line 3, key 'colour'" in line for line in lines))

    def test_forced_equivalence_on_odometer_exits_two(self):
        path = self.bundled_with("dyadic_odometer", "equivalence = true")

        code, _, lines = run_cli(["analyze", "-c", path])

        self.assertEqual(code, 2)
        self.assertTrue(any(line.startswith("❌ HypothesisError") for line in lines))

    def test_box_cap_exits_three(self):
        path = self.bundled_with("tent_pair", "[caps]\nmax_boxes = 16")

        code, _, lines = run_cli(["analyze", "-c", path])

        self.assertEqual(code, 3)
        self.assertTrue(any(line.startswith("💡") for line in lines))

    def test_verbose_progress(self):
        code, _, lines = run_cli(["analyze", "-c", "half_rotation", "-v"])

        self.assertEqual(code, 0)
        self.assertTrue(any(line.startswith("🔍 building graph") for line in lines))


class TestScanCommand(CommandTestCase):
    def test_dyadic_odometer(self):
        code, stdout, lines = run_cli(["scan", "-c", "dyadic_odometer"])

        self.assertEqual(code, 0)
        self.assertIn("✅ ks=(2,4,8,16,32) verdict=OdometerLike(2,2,2,2,2)", lines)
        self.assertIn("✅ semiconjugacy violations: 0", lines)
        self.assertEqual(json.loads(stdout)["result"]["verdict"], "OdometerLike(2,2,2,2,2)")

    def test_seed_changes_digest_only_through_config(self):
        _, plain, _ = run_cli(["scan", "-c", "half_rotation"])
        _, seeded, _ = run_cli(["scan", "-c", "half_rotation", "--seed", "5"])

        self.assertNotEqual(json.loads(plain)["config_digest"], json.loads(seeded)["config_digest"])
        self.assertEqual(json.loads(seeded)["seed"], 5)


class TestShadowCommand(CommandTestCase):
    def test_chain(self):
        code, stdout, lines = run_cli(["shadow", "-c", "tent_pair", "--chain", "0.1,0.2,0.4,0.8"])

        self.assertEqual(code, 0)
        self.assertIn("✅ Chain shadowed", lines)
        self.assertTrue(json.loads(stdout)["result"]["shadow"]["found"])

    def test_transfer_refused_after_failed_spot_check(self):
        code, stdout, lines = run_cli(["shadow", "-c", "rotations", "--transfer"])

        self.assertEqual(code, 2)
        self.assertEqual(stdout, "")
        self.assertTrue(any(line.startswith("❌ ShadowingGateError") for line in lines))


class TestExportCommand(CommandTestCase):
    def test_dot_and_csv_agree(self):
        # Arrange
        dot = self.tmp / "graph.dot"
        csv = self.tmp / "edges.csv"

        # Act
        code, _, lines = run_cli([
            "export", "-c", "rotations", "--res", "32", "--dot", str(dot), "--csv", str(csv),
        ])

        # Assert
        self.assertEqual(code, 0)
        self.assertIn(f"✅ Wrote {dot}", lines)
        self.assertIn(f"✅ Wrote {csv}", lines)
        n_rows = len(csv.read_text(encoding="utf-8").splitlines()) - 1
        self.assertEqual(dot.read_text(encoding="utf-8").count(" -> "), n_rows)
        self.assertEqual(dot.read_text(encoding="utf-8").count("[label=\"b"), 32)


class TestOdometerCommand(CommandTestCase):
    def test_arithmetic(self):
        code, stdout, _ = run_cli(["odometer", "--alpha", "2,3,2", "--x", "1,2,0", "--y", "1,1,1", "--steps", "2"])

        self.assertEqual(code, 0)
        result = json.loads(stdout)["result"]
        self.assertEqual(result["x_plus_y"], "0,1,0")
        self.assertEqual(result["orbit"], ["1,2,0", "0,0,1"])

    def test_bad_digits_exit_one(self):
        code, stdout, _ = run_cli(["odometer", "--alpha", "2,2", "--x", "3,0"])

        self.assertEqual(code, 1)
        self.assertEqual(stdout, "")


class TestDispatcher(CommandTestCase):
    """Test routing and the internal-error path."""

    def test_no_command_prints_help(self):
        code, stdout, _ = run_cli([])

        self.assertEqual(code, 1)
        self.assertIn("usage: chainscope", stdout)

    def test_container_commands(self):
        container = DIContainer()
        args = Namespace(config="odometer_cyclic", seed=None, threads=None, out=None, dot=None, csv=None,
                         verbose=False)

        with patch('sys.stdout', new_callable=StringIO):
            with patch('builtins.print') as mock_print:
                code = container.scan_command.execute(args)

        self.assertEqual(code, 0)
        lines = [call.args[0] for call in mock_print.call_args_list]
        self.assertIn("✅ ks=(2,2,2) verdict=CyclicFactor(2)", lines)

    @patch('chainscope.application.use_cases.analyze_use_case.AnalyzeUseCase.execute')
    def test_unexpected_exception_exits_one(self, mock_execute):
        # Arrange
        mock_execute.side_effect = RuntimeError("boom")
        args = Namespace(config="half_rotation", verbose=False)

        # Act
        with patch('builtins.print') as mock_print:
            code = CommandDispatcher.try_dispatch("analyze", args)

        # Assert
        self.assertEqual(code, 1)
        self.assertIn("❌ Internal error: boom", [call.args[0] for call in mock_print.call_args_list])

    def test_unknown_command(self):
        with patch('builtins.print'):
            self.assertEqual(CommandDispatcher().dispatch("plot", Namespace()), 1)


if __name__ == '__main__':
    unittest.main()
