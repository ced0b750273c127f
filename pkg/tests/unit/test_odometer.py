"""Unit tests for the odometer and its finite digit space."""
import itertools
import unittest

import numpy as np

from chainscope.domain.odometer.digit_space import DigitSpace, OdometerMap, as_finite_system
from chainscope.domain.odometer.odometer import DigitString, Odometer
from chainscope.domain.shared.errors import DomainError, ResourceCapError


def _all_strings(odometer):
    return [DigitString(digits) for digits in itertools.product(*(range(j) for j in odometer.radices))]


class TestOdometerArithmetic(unittest.TestCase):
    """Test carries, the metric and the group structure."""

    def test_carry_propagates(self):
        # Arrange
        odometer = Odometer((2, 3, 2), 3)

        # Act
        result = odometer.add(DigitString((1, 2, 0)), DigitString((1, 0, 0)))

        # Assert
        self.assertEqual(result, DigitString((0, 0, 1)))

    def test_top_carry_wraps_to_zero(self):
        odometer = Odometer((2, 2), 2)
        self.assertEqual(odometer.g_alpha(DigitString((1, 1))), odometer.zero())

    def test_d_alpha_weights_digits(self):
        odometer = Odometer((3, 3, 3), 3)
        x = DigitString((0, 1, 2))
        y = DigitString((0, 2, 0))
        self.assertAlmostEqual(odometer.d_alpha(x, y), 0.25 + 0.125)
        self.assertEqual(odometer.d_alpha(x, x), 0.0)

    def test_check_rejects_digits_above_radix(self):
        odometer = Odometer((2, 3), 2)
        with self.assertRaises(DomainError):
            odometer.check(DigitString((0, 3)))
        with self.assertRaises(DomainError):
            odometer.check(DigitString((0,)))

    def test_radices_below_two_rejected(self):
        with self.assertRaises(DomainError):
            Odometer((2, 1), 2)

    def test_tail_pads_alpha(self):
        odometer = Odometer((3,), 4, tail=2)
        self.assertEqual(odometer.radices, (3, 2, 2, 2))
        self.assertEqual(odometer.size, 24)
        with self.assertRaises(DomainError):
            Odometer((3,), 4)

    def test_group_axioms_and_single_cycle(self):
        """Addition is an abelian group and g_alpha visits every string once."""
        for alpha in ((2, 2, 2), (2, 3), (3, 2), (2, 2, 2, 2, 2)):
            with self.subTest(alpha=alpha):
                odometer = Odometer(alpha, len(alpha))
                strings = _all_strings(odometer)
                zero = odometer.zero()
                for x in strings:
                    self.assertEqual(odometer.add(x, zero), x)
                    inverses = [y for y in strings if odometer.add(x, y) == zero]
                    self.assertEqual(len(inverses), 1)
                for x, y in itertools.product(strings[:8], repeat=2):
                    self.assertEqual(odometer.add(x, y), odometer.add(y, x))
                    for z in strings[:4]:
                        self.assertEqual(
                            odometer.add(odometer.add(x, y), z),
                            odometer.add(x, odometer.add(y, z)),
                        )

                orbit = list(odometer.orbit(zero, odometer.size + 1))
                self.assertEqual(len(set(orbit[:-1])), odometer.size)
                self.assertEqual(orbit[-1], zero)

    def test_index_and_digits_are_inverse(self):
        odometer = Odometer((2, 3, 2), 3)
        for index in range(odometer.size):
            self.assertEqual(odometer.index_of(odometer.digits_of(index)), index)
        # counting order: adding one moves one index forward
        x = odometer.digits_of(5)
        self.assertEqual(odometer.index_of(odometer.g_alpha(x)), 6)
        with self.assertRaises(DomainError):
            odometer.digits_of(odometer.size)

    def test_digit_table_matches_digits_of(self):
        odometer = Odometer((3, 2), 2)
        table = odometer.digit_table()
        self.assertEqual(table.shape, (6, 2))
        for index in range(6):
            self.assertEqual(tuple(table[index]), odometer.digits_of(index).digits)

    def test_truncate(self):
        odometer = Odometer((2, 3, 5), 3)
        self.assertEqual(odometer.truncate(2), Odometer((2, 3), 2))
        with self.assertRaises(DomainError):
            odometer.truncate(4)

    def test_digit_string_csv(self):
        self.assertEqual(DigitString.from_csv("1,0,2"), DigitString((1, 0, 2)))
        self.assertEqual(DigitString((1, 0, 2)).to_csv(), "1,0,2")
        with self.assertRaises(DomainError):
            DigitString.from_csv("1,a")


class TestDigitSpace(unittest.TestCase):
    """Test the odometer as a finite system."""

    def test_map_is_index_shift(self):
        # Arrange
        odometer = Odometer((2, 2, 2), 3)
        system = as_finite_system(odometer)

        # Act
        images = system.apply_many(0, np.arange(8))

        # Assert
        self.assertEqual(images.tolist(), [1, 2, 3, 4, 5, 6, 7, 0])
        self.assertEqual(system.n_symbols, 1)

    def test_distance_agrees_with_d_alpha(self):
        odometer = Odometer((2, 3), 2)
        space = DigitSpace(odometer)
        for i, j in itertools.product(range(odometer.size), repeat=2):
            expected = odometer.d_alpha(odometer.digits_of(i), odometer.digits_of(j))
            self.assertAlmostEqual(float(space.distance(np.array(i), np.array(j))), expected)

    def test_steps_combine(self):
        odometer = Odometer((2, 2), 2)
        system = as_finite_system(odometer).iterate(3)
        self.assertEqual(system.maps[0], OdometerMap(odometer, 3))

    def test_point_cap(self):
        with self.assertRaises(ResourceCapError):
            as_finite_system(Odometer((2,) * 10, 10), max_points=512)


if __name__ == '__main__':
    unittest.main()
