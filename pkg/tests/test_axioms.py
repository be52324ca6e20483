import unittest

import numpy as np

from overlap_gen.lib.axioms import \
    AXIOMS, BlackBoxOverlap, DIFFER, EQUAL, O2, O3, O5, check_axioms, \
    equivalent
from overlap_gen.lib.catalog import PAIR_FIXTURES
from overlap_gen.lib.genfn import FAIL, PASS
from overlap_gen.lib.pair import VALID, validate_pair

from tests.fixtures import \
    INVALID_FIXTURES, VALID_FIXTURES, fixture_overlap, fixture_pair, \
    overshooting_pair, product_pair, reciprocal_cauchy_pair


class CheckAxiomsTest(unittest.TestCase):

    def test_product_expression(self):
        report = check_axioms(BlackBoxOverlap.from_expression('x*y'), n=65)
        self.assertEqual(report.overall, PASS)
        self.assertEqual(list(report.axioms), list(AXIOMS))
        self.assertEqual(report.grid_n, 65)

    def test_minimum(self):
        report = check_axioms(BlackBoxOverlap.from_expression('min(x, y)'),
                              n=65)
        self.assertEqual(report.overall, PASS)

    def test_mean(self):
        report = check_axioms(BlackBoxOverlap.from_expression('(x+y)/2'),
                              n=65)
        self.assertEqual(report.axioms[O2].verdict, FAIL)
        self.assertEqual(report.axioms[O2].witnesses[0].points[0],
                         (0.0, 1.0, 0.5))

    def test_asymmetric(self):
        report = check_axioms(BlackBoxOverlap.from_expression('x*x*y'), n=65)
        self.assertEqual(report.axioms['O1'].verdict, FAIL)
        self.assertEqual(report.axioms['O4'].verdict, PASS)

    def test_decreasing(self):
        report = check_axioms(
            BlackBoxOverlap.from_expression('x*y*(1.5-x*y)*2'), n=65)
        self.assertEqual(report.axioms['O4'].verdict, FAIL)

    def test_jump(self):
        report = check_axioms(fixture_overlap('vartheta_jump'), n=65)
        self.assertEqual(report.axioms[O5].verdict, FAIL)
        (xa, ya, va), (xb, yb, vb) = report.axioms[O5].witnesses[0].points
        self.assertGreater(abs(vb - va), 0.1)

    def test_small_jump(self):
        for n in (65, 257):
            report = check_axioms(fixture_overlap('vartheta_small_jump'),
                                  n=n)
            self.assertEqual(report.axioms[O5].verdict, FAIL, msg=n)

    def test_overshooting(self):
        report = check_axioms(BlackBoxOverlap.from_pair(overshooting_pair()),
                              n=33)
        failed = [a for a, check in report.axioms.items() \
                  if check.verdict == FAIL]
        self.assertEqual(failed, [O3])
        witness = report.axioms[O3].witnesses[0]
        self.assertEqual(witness.description, 'above_one')
        self.assertEqual(witness.points[0], (1.0, 1.0, 2.0))

    def test_below_zero(self):
        report = check_axioms(
            BlackBoxOverlap.from_expression('x*y*(4*x*y-1)'), n=65)
        self.assertEqual(report.axioms[O2].verdict, FAIL)
        witness = report.axioms[O2].witnesses[0]
        self.assertEqual(witness.description, 'below_zero')
        self.assertLess(witness.points[0][2], 0.0)

    def test_plateau(self):
        report = check_axioms(fixture_overlap('anchor_plateau'))
        self.assertEqual(report.axioms[O3].verdict, FAIL)
        x, y, v = report.axioms[O3].witnesses[0].points[0]
        self.assertEqual(v, 1.0)
        self.assertTrue(0.5 <= x < 1.0)
        self.assertTrue(0.5 <= y < 1.0)

    def test_small_grid(self):
        with self.assertRaises(ValueError):
            check_axioms(BlackBoxOverlap.from_expression('x*y'), n=8)

    def test_valid_fixtures(self):
        for name in VALID_FIXTURES:
            for n in (65, 257):
                report = check_axioms(fixture_overlap(name), n=n)
                self.assertEqual(report.overall, PASS,
                                 msg='{} at n={}'.format(name, n))

    def test_invalid_fixtures(self):
        for name in INVALID_FIXTURES:
            report = check_axioms(fixture_overlap(name))
            failed = [a for a, check in report.axioms.items() \
                      if check.verdict == FAIL]
            self.assertEqual(failed, [PAIR_FIXTURES[name]['target'][0]],
                             msg=name)

    def test_agrees_with_characterization(self):
        for name in PAIR_FIXTURES:
            p = fixture_pair(name)
            valid = validate_pair(p).overall == VALID
            holds = check_axioms(BlackBoxOverlap.from_pair(p)).overall == PASS
            self.assertEqual(valid, holds, msg=name)


class EquivalentTest(unittest.TestCase):

    def test_product(self):
        result = equivalent(BlackBoxOverlap.from_pair(product_pair()),
                            BlackBoxOverlap.from_expression('x*y'), n=257)
        self.assertEqual(result.outcome, EQUAL)
        self.assertLessEqual(result.max_dev, 1e-12)
        self.assertIsNone(result.witness)

    def test_differ(self):
        a = BlackBoxOverlap.from_pair(product_pair())
        b = BlackBoxOverlap.from_pair(reciprocal_cauchy_pair())
        self.assertAlmostEqual(a(0.5, 0.5), 0.25, places=15)
        self.assertAlmostEqual(b(0.5, 0.5), 1.0 / 3.0, places=15)
        result = equivalent(a, b)
        self.assertEqual(result.outcome, DIFFER)
        x, y, va, vb = result.witness
        self.assertAlmostEqual(abs(va - vb), result.max_dev, places=15)
        self.assertAlmostEqual(va, a(x, y), places=15)

    def test_reflexive_symmetric(self):
        a = BlackBoxOverlap.from_pair(reciprocal_cauchy_pair())
        self.assertEqual(equivalent(a, a).max_dev, 0.0)
        c = BlackBoxOverlap.from_expression('min(x, y)')
        self.assertEqual(equivalent(a, c).max_dev, equivalent(c, a).max_dev)


class BlackBoxTest(unittest.TestCase):

    def test_grid(self):
        O = BlackBoxOverlap.from_expression('x*y')
        xs, V = O.grid(5)
        self.assertTrue(np.array_equal(xs, np.linspace(0.0, 1.0, 5)))
        self.assertEqual(V[2, 4], 0.5)
