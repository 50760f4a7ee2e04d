import os
import sys
import unittest

import numpy as np

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..')))
from wbpinn.solver import cases  # noqa E402


class TestCases(unittest.TestCase):

    """
    ************************************************************
    Test - CASES
    test_registry_table - check u0, l and r at sampled points
    test_domain - check the shared domain
    test_get_case_unknown - check an unknown id
    ************************************************************
    """
    def test_registry_table(self):
        """
        CHECK "CASES" matches the three documented problems
        data check:
            case 1: u0 = 1 | 0, l = t - 0.5, r = 0
            case 2: u0 = -sin(pi x), l = t - 0.5, r = 0
            case 3: u0 = -1 | 1, l = t - 0.5, r = 1
        """
        x = np.array([-0.9, -0.5, -0.1, 0.1, 0.5, 0.9])
        t = np.array([0.0, 0.25, 0.5, 0.75, 1.0])
        table = {
            1: (np.where(x < 0.0, 1.0, 0.0), 0.0),
            2: (-np.sin(np.pi * x), 0.0),
            3: (np.where(x < 0.0, -1.0, 1.0), 1.0),
        }
        for case_id, (u0, right) in table.items():
            with self.subTest(case=case_id):
                case = cases.get_case(case_id)
                self.assertEqual(case.case_id, case_id)
                np.testing.assert_allclose(case.u0(x), u0, atol=1e-15)
                np.testing.assert_allclose(case.left_datum(t), t - 0.5, atol=1e-15)
                np.testing.assert_array_equal(case.right_datum(t), np.full(t.shape, right))
                self.assertEqual(case.right_datum(0.3), right)
                self.assertAlmostEqual(case.left_datum(0.3), -0.2, places=15)

    def test_domain(self):
        """
        CHECK "TestCase" domain is (-1, 1) for every case
        """
        for case in cases.CASES.values():
            self.assertEqual(case.domain, (-1.0, 1.0))

    def test_get_case_unknown(self):
        """
        CHECK "get_case" raises for an unknown id
        """
        with self.assertRaises(ValueError):
            cases.get_case(4)
        with self.assertRaises(ValueError):
            cases.get_case("two")

    """
    ************************************************************
    Test - antiderivatives
    test_antiderivatives - check the exact cell average primitives
    test_boundary_data - check the BoundaryData view
    test_constant_profile - check the constant profile
    test_step_cell_average - check exact step cell averages
    ************************************************************
    """
    def test_antiderivatives(self):
        """
        CHECK "antiderivative" differentiates back to u0
        """
        x = np.linspace(-0.95, 0.95, 39)
        h = 1e-6
        for case in cases.CASES.values():
            with self.subTest(case=case.case_id):
                numeric = (case.u0.antiderivative(x + h) - case.u0.antiderivative(x - h)) / (2.0 * h)
                smooth = np.abs(x) > 2 * h
                np.testing.assert_allclose(numeric[smooth], case.u0(x)[smooth], atol=1e-8)

    def test_boundary_data(self):
        """
        CHECK "boundary_data" exposes both data
        """
        case = cases.get_case(3)
        data = case.boundary_data
        self.assertEqual(data.left(1.0), 0.5)
        self.assertEqual(data.right(1.0), 1.0)

    def test_constant_profile(self):
        """
        CHECK "constant" profile and antiderivative
        """
        profile = cases.constant(0.25)
        np.testing.assert_array_equal(profile(np.zeros(3)), np.full(3, 0.25))
        self.assertEqual(profile.antiderivative(2.0), 0.5)
        np.testing.assert_array_equal(profile.cell_average(np.array([-1.0, 0.5]), np.array([-0.5, 0.75])), [0.25, 0.25])

    def test_step_cell_average(self):
        """
        CHECK "piecewise_constant" cell_average on, left of and right of the jump
        data check:
            step 1 | 0: (-1, -0.5) -> 1, (0.5, 1) -> 0, (-0.25, 0.75) -> 0.25
        """
        profile = cases.piecewise_constant(1.0, 0.0)
        values = profile.cell_average(np.array([-1.0, 0.5, -0.25]), np.array([-0.5, 1.0, 0.75]))
        np.testing.assert_array_equal(values, [1.0, 0.0, 0.25])
        self.assertIsNone(cases.negative_sine().cell_average)


if __name__ == '__main__':
    unittest.main()
