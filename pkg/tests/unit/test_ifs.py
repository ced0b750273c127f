"""Unit tests for maps, systems, words and pseudo-orbits."""
import unittest

import numpy as np

from chainscope.domain.ifs.case_studies import (
    DOUBLING_TO_ONE,
    tent_map_system,
    tent_pair_system,
    two_rotation_system,
)
from chainscope.domain.ifs.map_spec import Affine, PiecewiseLinear, Rotation, compose
from chainscope.domain.ifs.system import IFSystem
from chainscope.domain.ifs.word import PseudoOrbit, Word
from chainscope.domain.shared.errors import DomainError, ResourceCapError
from chainscope.domain.space.regions import IntervalSet
from chainscope.domain.space.space_kind import Circle, Interval, Product


class TestMaps(unittest.TestCase):
    """Test map evaluation, images and preimages."""

    def setUp(self):
        self.interval = Interval(0.0, 1.0)
        self.circle = Circle()

    def test_rotation_wraps(self):
        images = Rotation(0.25).apply(self.circle, np.array([0.1, 0.8]))
        np.testing.assert_allclose(images, [0.35, 0.05])

    def test_rotations_combine_into_one(self):
        combined = compose(Rotation(0.25), Rotation(0.5))
        self.assertEqual(combined, Rotation(0.75))

    def test_pwl_rejects_unsorted_breakpoints(self):
        with self.assertRaises(DomainError):
            PiecewiseLinear(((0.0, 0.0), (0.5, 1.0), (0.5, 0.0), (1.0, 1.0)))

    def test_pwl_must_span_the_interval(self):
        """Breakpoints that stop short of the end point are rejected."""
        # Arrange
        short = PiecewiseLinear(((0.0, 0.0), (0.5, 1.0)))

        # Act / Assert
        with self.assertRaises(DomainError):
            IFSystem(self.interval, (short,))

    def test_pwl_preimage_of_flat_piece(self):
        """The flat top of f1 pulls back to the whole upper half."""
        # Act
        pre = DOUBLING_TO_ONE.preimage(self.interval, IntervalSet.single(0.9, 1.0))

        # Assert
        self.assertEqual(pre.piece_count, 1)
        self.assertAlmostEqual(float(pre.lo[0]), 0.45)
        self.assertAlmostEqual(float(pre.hi[0]), 1.0)

    def test_pwl_image_of_tent(self):
        tent = tent_map_system().maps[0]
        image = tent.image(self.interval, IntervalSet.single(0.4, 0.6))
        self.assertAlmostEqual(float(image.lo[0]), 0.8)
        self.assertAlmostEqual(float(image.hi[0]), 1.0)

    def test_affine_is_clipped(self):
        m = Affine(2.0, 0.5)
        np.testing.assert_allclose(m.apply(self.interval, np.array([0.0, 0.1, 0.5])), [0.5, 0.7, 1.0])
        pre = m.preimage(self.interval, IntervalSet.single(0.9, 1.0))
        self.assertAlmostEqual(float(pre.lo[0]), 0.2)
        self.assertAlmostEqual(float(pre.hi[0]), 1.0)

    def test_composed_map_applies_first_then_second(self):
        m = compose(DOUBLING_TO_ONE, tent_map_system().maps[0])
        # 0.2 -> 0.4 -> 0.8
        self.assertAlmostEqual(float(m.apply(self.interval, np.array(0.2))), 0.8)


class TestIFSystem(unittest.TestCase):
    """Test the system of maps."""

    def test_system_needs_maps(self):
        with self.assertRaises(DomainError):
            IFSystem(Circle(), ())

    def test_rotation_on_interval_is_rejected(self):
        with self.assertRaises(DomainError):
            IFSystem(Interval(), (Rotation(0.1),))

    def test_apply_word_leftmost_first(self):
        # Arrange
        system = tent_pair_system()

        # Act
        end = system.apply_word(Word((0, 0, 1)), 0.1)

        # Assert: 0.1 -> 0.2 -> 0.4 -> f2(0.4) = 1
        self.assertAlmostEqual(end, 1.0)
        self.assertEqual(len(system.orbit(Word((0, 0, 1)), 0.1)), 4)

    def test_symbol_out_of_range(self):
        system = tent_pair_system()
        with self.assertRaises(DomainError):
            system.apply(2, 0.5)
        with self.assertRaises(DomainError):
            system.apply_word(Word((0, 3)), 0.5)

    def test_validate_chain_finds_witness(self):
        system = tent_pair_system()
        chain = PseudoOrbit((0.1, 0.2, 0.4, 1.0), 0.01)

        result = system.validate_chain(chain, 0.01)

        self.assertTrue(result.valid)
        self.assertEqual(result.witness, Word((0, 0, 1)))

    def test_validate_chain_reports_failed_step(self):
        system = two_rotation_system()
        chain = PseudoOrbit((0.0, 0.25, 0.3), 0.01)

        result = system.validate_chain(chain, 0.01)

        self.assertFalse(result.valid)
        self.assertEqual(result.failed_step, 1)

    def test_iterate_enumerates_words(self):
        """Symbol 1 of F^2 is the word (0, 1)."""
        system = two_rotation_system(0.1, 0.3)

        square = system.iterate(2)

        self.assertEqual(square.n_symbols, 4)
        self.assertEqual(system.word_of(1, 2), Word((0, 1)))
        self.assertAlmostEqual(square.apply(1, 0.0), 0.4)
        self.assertAlmostEqual(square.apply(3, 0.0), 0.6)

    def test_iterate_cap(self):
        with self.assertRaises(ResourceCapError):
            tent_pair_system().iterate(13, max_maps=4096)

    def test_product_numbering(self):
        left = two_rotation_system(0.1, 0.3)
        right = tent_pair_system()

        product = left.product(right)

        self.assertIsInstance(product.space, Product)
        self.assertEqual(product.n_symbols, 4)
        x, y = product.apply(3, (0.0, 0.2))
        self.assertAlmostEqual(x, 0.3)
        self.assertAlmostEqual(y, 1.0)

    def test_describe_lists_maps(self):
        described = two_rotation_system(0.25, 0.5).describe()
        self.assertEqual(described["space"]["kind"], "circle")
        self.assertEqual(len(described["maps"]), 2)


class TestWords(unittest.TestCase):
    """Test words and pseudo-orbits."""

    def test_word_from_csv(self):
        self.assertEqual(Word.from_csv("0,1,1"), Word((0, 1, 1)))
        self.assertEqual(Word.from_csv(""), Word(()))
        with self.assertRaises(DomainError):
            Word.from_csv("0,x")

    def test_word_rejects_negative_symbols(self):
        with self.assertRaises(DomainError):
            Word((0, -1))

    def test_word_concatenation(self):
        self.assertEqual(Word((0,)) + Word((1, 1)), Word((0, 1, 1)))


if __name__ == '__main__':
    unittest.main()
