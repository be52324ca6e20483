import math
import pickle
import unittest

import numpy as np

from overlap_gen.lib.catalog import catalog_fn
from overlap_gen.lib.errors import \
    DomainError, DomainMismatch, NotBracketed, SpecError
from overlap_gen.lib.genfn import \
    ENDPOINT_GEOMETRIC, FAIL, INCONCLUSIVE, Interval, InverseFn, \
    NON_DECREASING, NON_NEGATIVE, PASS, Piecewise, UNIFORM, UNIT, compose, \
    continuity_probe, evaluate, expression_fn, inverse_monotone, \
    merge_reports, monotonicity_probe, probe_report, sample_grid, step_fn
from overlap_gen.lib.xreal import INF, NINF, ONE, ZERO, finite


class IntervalTest(unittest.TestCase):

    def test_contains(self):
        self.assertTrue(UNIT.contains(ZERO))
        self.assertTrue(NON_NEGATIVE.contains(INF))
        self.assertFalse(NON_NEGATIVE.contains(NINF))
        half_open = Interval(0, 1, True, False)
        self.assertFalse(half_open.contains(ONE))
        with self.assertRaises(ValueError):
            Interval(1, 0)

    def test_snap(self):
        self.assertEqual(UNIT.snap(finite(1.0 + 1e-14)), ONE)
        self.assertEqual(UNIT.snap(finite(-1e-14)), ZERO)
        with self.assertRaises(DomainError):
            UNIT.snap(finite(1.001))

    def test_covers(self):
        self.assertTrue(NON_NEGATIVE.covers(Interval(2, 'inf')))
        self.assertFalse(UNIT.covers(Interval(0, 2)))
        self.assertEqual(NON_NEGATIVE.finite_window(64.0), (0.0, 64.0))


class EvaluateTest(unittest.TestCase):

    def test_catalog(self):
        self.assertEqual(evaluate(catalog_fn('neg_log'), 0), INF)
        self.assertAlmostEqual(
            evaluate(catalog_fn('neg_log'), 0.5).value, math.log(2), places=15)
        self.assertEqual(evaluate(catalog_fn('exp_neg'), INF), ZERO)
        self.assertEqual(evaluate(catalog_fn('log_pos'), 0), NINF)
        self.assertAlmostEqual(
            evaluate(catalog_fn('power_neg_log', p=2), 0.5).value,
            2 * math.log(2), places=15)

    def test_outside_domain(self):
        with self.assertRaises(DomainError):
            evaluate(catalog_fn('neg_log'), 1.5)
        with self.assertRaises(DomainError):
            evaluate(catalog_fn('exp_neg'), -1)

    def test_step(self):
        f = step_fn(0.5, -1.0, 1.0)
        self.assertEqual(evaluate(f, 0.25), finite(-1.0))
        self.assertEqual(evaluate(f, 0.5), finite(1.0))
        self.assertEqual(evaluate(f, 1.0), finite(1.0))

    def test_pickle(self):
        f = compose(catalog_fn('exp_neg'), catalog_fn('neg_log'))
        g = pickle.loads(pickle.dumps(f))
        self.assertEqual(evaluate(g, 0.25), evaluate(f, 0.25))


class ComposeTest(unittest.TestCase):

    def test_compose(self):
        f = compose(catalog_fn('exp_neg'), catalog_fn('neg_log'))
        self.assertAlmostEqual(evaluate(f, 0.5).value, 0.5, places=15)
        self.assertEqual(evaluate(f, 0), ZERO)
        f = compose(catalog_fn('quadratic_h'), catalog_fn('neg_log'))
        self.assertAlmostEqual(evaluate(f, math.exp(-2)).value, 4.0,
                               places=12)

    def test_mismatch(self):
        with self.assertRaises(DomainMismatch) as ctx:
            compose(catalog_fn('neg_log'), step_fn(0.5, -1.0, 1.0))
        x, v = ctx.exception.witness.points[0]
        self.assertFalse(UNIT.contains(v))
        self.assertEqual(evaluate(step_fn(0.5, -1.0, 1.0), x), v)

    def test_associative(self):
        a, b, c = catalog_fn('exp_neg'), catalog_fn('quadratic_h'), \
                  catalog_fn('neg_log')
        left = compose(a, compose(b, c))
        right = compose(compose(a, b), c)
        for x in np.linspace(0.0, 1.0, 33):
            self.assertEqual(evaluate(left, x), evaluate(right, x))


class InverseTest(unittest.TestCase):

    def test_examples(self):
        neg_log = catalog_fn('neg_log')
        self.assertAlmostEqual(
            inverse_monotone(neg_log, math.log(2)).value, 0.5, places=12)
        self.assertEqual(inverse_monotone(neg_log, INF), ZERO)
        self.assertEqual(inverse_monotone(neg_log, 0.0), ONE)
        self.assertEqual(inverse_monotone(catalog_fn('exp_neg'), 0.0), INF)

    def test_not_bracketed(self):
        with self.assertRaises(NotBracketed):
            inverse_monotone(catalog_fn('exp_neg'), 2.0)
        with self.assertRaises(NotBracketed):
            inverse_monotone(catalog_fn('neg_log'), -1.0)
        with self.assertRaises(NotBracketed):
            inverse_monotone(expression_fn('1'), 2.0)

    def test_round_trip(self):
        rng = np.random.default_rng(42)
        cases = [
            (catalog_fn('neg_log'), 0.0, 30.0),
            (catalog_fn('reciprocal_residual'), 0.0, 1e3),
            (catalog_fn('exp_neg'), 1e-9, 1.0),
            (catalog_fn('cauchy'), 1e-6, 1.0),
            (catalog_fn('log_pos'), -30.0, 0.0),
        ]
        for f, lo, hi in cases:
            for y in rng.uniform(lo, hi, 100):
                x = inverse_monotone(f, y)
                self.assertLessEqual(abs(evaluate(f, x).value - y), 1e-10,
                                     msg='{} at {}'.format(f, y))

    def test_inverse_fn(self):
        inv = InverseFn(catalog_fn('exp_neg'))
        self.assertEqual(inv.domain, Interval(0, 1))
        self.assertAlmostEqual(evaluate(inv, math.exp(-3)).value, 3.0,
                               places=10)
        self.assertEqual(evaluate(inv, 0), INF)


class SampleGridTest(unittest.TestCase):

    def test_uniform(self):
        samples = sample_grid(catalog_fn('neg_log'), 3, UNIFORM)
        self.assertEqual([x for x, _ in samples],
                         [ZERO, finite(0.5), ONE])
        self.assertEqual(samples[0][1], INF)
        self.assertAlmostEqual(samples[1][1].value, math.log(2), places=15)

    def test_endpoint_geometric(self):
        samples = dict(sample_grid(catalog_fn('neg_log'), 17,
                                   ENDPOINT_GEOMETRIC))
        for k in range(1, 31):
            self.assertIn(finite(2.0 ** -k), samples)
        # no cluster where the function is finite
        self.assertNotIn(finite(1.0 - 2.0 ** -10), samples)

    def test_unbounded(self):
        samples = sample_grid(catalog_fn('exp_neg'), 65, UNIFORM)
        xs = [x for x, _ in samples]
        self.assertEqual(len(xs), 66)
        self.assertEqual(xs[0], ZERO)
        self.assertEqual(xs[-2], finite(64.0))
        self.assertEqual(samples[-1], (INF, ZERO))

    def test_sorted(self):
        samples = sample_grid(catalog_fn('log_pos'), 65, ENDPOINT_GEOMETRIC)
        xs = [x for x, _ in samples]
        self.assertEqual(xs, sorted(xs))


class MonotonicityProbeTest(unittest.TestCase):

    def test_pass(self):
        for n in (64, 256, 257, 1024):
            report = monotonicity_probe(catalog_fn('neg_log'), n)
            self.assertEqual(report.verdict, PASS)
            self.assertEqual(report.grid_n, n)
        report = monotonicity_probe(catalog_fn('exp_pos'), 257,
                                    NON_DECREASING, strict=True)
        self.assertEqual(report.verdict, PASS)
        self.assertIn('strict_at_resolution', report.caveats)

    def test_wrong_direction(self):
        f = catalog_fn('quadratic_h').restrict(Interval(0, 10))
        report = monotonicity_probe(f, 65)
        self.assertEqual(report.verdict, FAIL)
        (x1, f1), (x2, f2) = report.witnesses[0].points
        self.assertLess(x1, x2)
        self.assertLess(f1, f2)

    def test_plateau(self):
        f = expression_fn('1')
        self.assertEqual(monotonicity_probe(f, 65).verdict, PASS)
        report = monotonicity_probe(f, 65, strict=True)
        self.assertEqual(report.verdict, FAIL)
        self.assertEqual(report.witnesses[0].description, 'plateau')


class ContinuityProbeTest(unittest.TestCase):

    def test_continuous(self):
        for name in ('neg_log', 'reciprocal_residual', 'exp_neg', 'cauchy',
                     'log_pos', 'exp_pos'):
            for n in (64, 256, 1024):
                report = continuity_probe(catalog_fn(name), n)
                self.assertEqual(report.verdict, PASS,
                                 msg='{} at n={}'.format(name, n))
                self.assertIn('continuous_at_resolution', report.caveats)
        f = catalog_fn('neg_log').restrict(Interval(0.01, 1))
        self.assertEqual(continuity_probe(f, 257).verdict, PASS)

    def test_jump(self):
        for at, height in ((0.3, 0.01), (0.5, 1.0), (0.77, 0.1)):
            f = step_fn(at, 0.0, height)
            for n in (256, 257, 1024):
                report = continuity_probe(f, n)
                self.assertEqual(report.verdict, FAIL)
                (xa, va), (xb, vb) = report.witnesses[0].points
                self.assertLessEqual(xa.value, at)
                self.assertGreaterEqual(xb.value, at)
                self.assertAlmostEqual(abs(vb.value - va.value), height,
                                       places=12)

    def test_jump_on_slope(self):
        f = Piecewise([(0, '4-4*x'), (0.3, '3.99-4*x')], UNIT)
        for n in (256, 257, 1024):
            report = continuity_probe(f, n)
            self.assertEqual(report.verdict, FAIL, msg='n={}'.format(n))
            (xa, va), (xb, vb) = report.witnesses[0].points
            self.assertLessEqual(xa.value, 0.3)
            self.assertGreaterEqual(xb.value, 0.3)
            self.assertAlmostEqual(va.value - vb.value, 0.01, places=9)

    def test_jump_on_unbounded_window(self):
        f = Piecewise([(0, 'exp(-x)'), (1.1, '0.97*exp(-x)')], NON_NEGATIVE)
        report = continuity_probe(f, 256)
        self.assertEqual(report.verdict, FAIL)
        (xa, va), (xb, vb) = report.witnesses[0].points
        self.assertLessEqual(xa.value, 1.1)
        self.assertGreaterEqual(xb.value, 1.1)
        self.assertAlmostEqual(va.value - vb.value, 0.03 * math.exp(-1.1),
                               places=9)

    def test_steep_continuous(self):
        for source in ('exp(-40*x)', '1/(1+1000*x)'):
            report = continuity_probe(expression_fn(source), 256)
            self.assertEqual(report.verdict, PASS, msg=source)

    def test_stats(self):
        report = continuity_probe(catalog_fn('neg_log'), 257)
        self.assertLess(report.stats['M_4n'], report.stats['M_n'])


class ReportTest(unittest.TestCase):

    def test_fail_needs_witness(self):
        with self.assertRaises(ValueError):
            probe_report(FAIL)

    def test_merge(self):
        merged = merge_reports([
            probe_report(PASS, grid_n=64, caveats=['a']),
            probe_report(INCONCLUSIVE, grid_n=257, caveats=['a', 'b'])])
        self.assertEqual(merged.verdict, INCONCLUSIVE)
        self.assertEqual(merged.grid_n, 257)
        self.assertEqual(merged.caveats, ('a', 'b'))


class DescriptorErrorTest(unittest.TestCase):

    def test_bad_expression(self):
        with self.assertRaises(SpecError):
            expression_fn('1 +')
