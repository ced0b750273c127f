"""Unit tests for the epsilon scan, the verdict and the odometer factor coding."""
import unittest
from unittest.mock import Mock

import numpy as np

from chainscope.domain.analysis.results import (
    CHAIN_MIXING,
    CYCLIC_FACTOR,
    INCONCLUSIVE,
    ODOMETER_LIKE,
    Verdict,
)
from chainscope.domain.analysis.scan import (
    build_factor_coding,
    check_semiconjugacy,
    epsilon_scan,
    grid_for_epsilon,
    reflected_coding,
)
from chainscope.domain.ifs.case_studies import (
    dyadic_odometer_system,
    single_rotation_system,
    tent_pair_system,
)
from chainscope.domain.odometer.odometer import Odometer
from chainscope.domain.shared.errors import (
    DomainError,
    NotTransitiveError,
    PreconditionError,
    ResourceCapError,
)
from chainscope.domain.space.grid import BoxGrid, PointGrid
from chainscope.domain.space.space_kind import Circle, Interval, Product


class TestGridForEpsilon(unittest.TestCase):
    """Test the per-level grid choice."""

    def test_power_of_two_resolution(self):
        self.assertEqual(grid_for_epsilon(Circle(), 0.1).resolution, 64)
        self.assertEqual(grid_for_epsilon(Interval(), 0.05).resolution, 128)
        self.assertEqual(grid_for_epsilon(Interval(), 0.05, rule=1.0).resolution, 32)

    def test_product_grid_per_axis(self):
        grid = grid_for_epsilon(Product(Interval(), Interval(0.0, 2.0)), 0.1)
        self.assertEqual(grid.resolution, (64, 128))

    def test_finite_space_keeps_points(self):
        system = dyadic_odometer_system(3)
        self.assertIsInstance(grid_for_epsilon(system.space, 0.01), PointGrid)

    def test_box_cap(self):
        with self.assertRaises(ResourceCapError):
            grid_for_epsilon(Circle(), 0.001, max_boxes=1000)
        with self.assertRaises(DomainError):
            grid_for_epsilon(Circle(), 0.0)


class TestEpsilonScan(unittest.TestCase):
    """Test periods across the refinement and the verdict they give."""

    def test_dyadic_odometer_periods_double(self):
        # Arrange
        system = dyadic_odometer_system(6)

        # Act
        scan = epsilon_scan(system, 0.495, 0.5, 5)

        # Assert
        self.assertEqual(scan.ks, (2, 4, 8, 16, 32))
        self.assertEqual(scan.verdict, Verdict(ODOMETER_LIKE, alpha=(2, 2, 2, 2, 2)))
        self.assertEqual(scan.verdict.describe(), "OdometerLike(2,2,2,2,2)")

    def test_odometer_above_three_eighths_is_cyclic(self):
        scan = epsilon_scan(dyadic_odometer_system(3), 0.49, 0.9, 3)

        self.assertEqual(scan.ks, (2, 2, 2))
        self.assertEqual(scan.verdict.kind, CYCLIC_FACTOR)
        self.assertEqual(scan.verdict.describe(), "CyclicFactor(2)")

    def test_half_rotation_is_chain_mixing(self):
        scan = epsilon_scan(single_rotation_system(0.5), 0.1, 0.5, 3)

        self.assertEqual(scan.ks, (1, 1, 1))
        self.assertEqual(scan.verdict.kind, CHAIN_MIXING)
        self.assertEqual([level.resolution for level in scan.levels], [64, 128, 256])

    def test_tent_pair_is_chain_mixing(self):
        scan = epsilon_scan(tent_pair_system(), 0.2, 0.5, 4)

        self.assertEqual(scan.ks, (1, 1, 1, 1))
        self.assertEqual(scan.verdict.kind, CHAIN_MIXING)

    def test_short_scan_is_inconclusive(self):
        scan = epsilon_scan(dyadic_odometer_system(6), 0.495, 0.5, 2)

        self.assertEqual(scan.ks, (2, 4))
        self.assertEqual(scan.verdict.kind, INCONCLUSIVE)
        self.assertEqual(len(scan.notes), 1)

    def test_non_transitive_level_aborts(self):
        """f1 on its own drains into the fixed point 1."""
        with self.assertRaises(NotTransitiveError) as raised:
            epsilon_scan(tent_pair_system().subsystem([0]), 0.1, 0.5, 3)
        self.assertEqual(raised.exception.level, 1)
        self.assertEqual(raised.exception.exit_code, 2)

    def test_schedule_validation(self):
        system = single_rotation_system(0.5)
        with self.assertRaises(DomainError):
            epsilon_scan(system, 0.1, 1.0, 3)
        with self.assertRaises(DomainError):
            epsilon_scan(system, 0.1, 0.5, 0)
        with self.assertRaises(DomainError):
            epsilon_scan(system, -0.1, 0.5, 3)

    def test_progress_reports_each_level(self):
        progress = Mock()

        epsilon_scan(single_rotation_system(0.5), 0.1, 0.5, 3, progress=progress)

        self.assertEqual(progress.call_count, 3)
        self.assertIn("level 1", progress.call_args_list[0][0][0])

    def test_to_dict(self):
        scan = epsilon_scan(dyadic_odometer_system(3), 0.49, 0.9, 3)

        out = scan.to_dict()

        self.assertEqual(out["ks"], [2, 2, 2])
        self.assertEqual(out["verdict"], "CyclicFactor(2)")
        self.assertEqual(len(out["levels"]), 3)


class TestFactorCoding(unittest.TestCase):
    """Test the odometer coding of the finest classes."""

    def setUp(self):
        self.system = dyadic_odometer_system(6)
        self.scan = epsilon_scan(self.system, 0.495, 0.5, 5)

    def test_codes_are_the_low_digits(self):
        # Act
        coding = build_factor_coding(self.scan)

        # Assert: the dyadic classes at period 2^i are the index mod 2^i
        self.assertEqual(coding.alpha, (2, 2, 2, 2, 2))
        self.assertEqual(coding.level_indices, (0, 1, 2, 3, 4))
        odometer = Odometer((2,) * 6, 6)
        for box in range(64):
            self.assertEqual(coding.code_of_box(box), odometer.digits_of(box).digits[:5])

    def test_semiconjugacy_holds(self):
        coding = build_factor_coding(self.scan)

        report = check_semiconjugacy(self.system, coding, samples=64, seed=0)

        self.assertEqual(report.samples, 64)
        self.assertEqual(report.violations, 0)
        self.assertIsNone(report.first_violation)

    def test_reflected_coding_breaks_semiconjugacy(self):
        """Numbering the classes backwards turns +1 into -1."""
        coding = reflected_coding(build_factor_coding(self.scan))

        report = check_semiconjugacy(self.system, coding, samples=64, seed=0)

        self.assertEqual(report.violations, report.samples)
        self.assertIsNotNone(report.first_violation)

    def test_odometer_must_match_alpha(self):
        coding = build_factor_coding(self.scan)
        with self.assertRaises(DomainError):
            check_semiconjugacy(self.system, coding, odometer=Odometer((3, 2, 2, 2, 2), 5))

    def test_coding_needs_odometer_verdict(self):
        scan = epsilon_scan(single_rotation_system(0.5), 0.1, 0.5, 3)
        with self.assertRaises(PreconditionError):
            build_factor_coding(scan)


class TestVerdict(unittest.TestCase):
    def test_unknown_kind(self):
        with self.assertRaises(DomainError):
            Verdict("Mixing")

    def test_describe(self):
        self.assertEqual(Verdict(CHAIN_MIXING).describe(), "ChainMixing")
        self.assertEqual(Verdict(INCONCLUSIVE).describe(), "Inconclusive")


class TestScanGrids(unittest.TestCase):
    def test_levels_keep_their_graphs(self):
        scan = epsilon_scan(single_rotation_system(0.5), 0.1, 0.5, 3)
        finest = scan.levels[-1]
        self.assertIsInstance(finest.grid, BoxGrid)
        self.assertEqual(finest.graph.n_boxes, 256)
        self.assertTrue(np.all(finest.analysis.recurrent))


if __name__ == '__main__':
    unittest.main()
