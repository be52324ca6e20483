import math
import pickle
import unittest

from overlap_gen.lib.errors import DomainError, SpecError
from overlap_gen.lib.expr import Expression


class ExpressionTest(unittest.TestCase):

    def test_evaluate(self):
        self.assertAlmostEqual(Expression('1-ln(x)')(math.e), 0.0, places=15)
        self.assertEqual(Expression('2*x**2 + 1')(3.0), 19.0)
        self.assertEqual(Expression('pow(x, 3)')(2.0), 8.0)
        self.assertEqual(Expression('min(x, 1) + max(x, 1)')(0.25), 1.25)
        self.assertEqual(Expression('-x')(2.0), -2.0)

    def test_limits(self):
        self.assertEqual(Expression('-ln(x)')(0.0), math.inf)
        self.assertEqual(Expression('exp(-x)')(math.inf), 0.0)
        self.assertEqual(Expression('1/x')(0.0), math.inf)
        self.assertEqual(Expression('1/(1-x)')(1.0), math.inf)
        self.assertEqual(Expression('exp(x)')(1e6), math.inf)
        self.assertEqual(Expression('inf')(0.0), math.inf)

    def test_undefined(self):
        with self.assertRaises(DomainError):
            Expression('ln(x)')(-1.0)
        with self.assertRaises(DomainError):
            Expression('x/x')(0.0)
        with self.assertRaises(DomainError):
            Expression('x - x')(math.inf)

    def test_two_variables(self):
        ex = Expression('x*y/(x+y-x*y)', ('x', 'y'))
        self.assertAlmostEqual(ex(0.5, 0.5), 1.0 / 3.0, places=15)
        with self.assertRaises(TypeError):
            ex(0.5)

    def test_rejected(self):
        for source in ('__import__("os")', 'x.real', 'sin(x)', 'y',
                       'lambda: 1', '[x]', 'exp(x, 2)', 'x if x else 1',
                       '1 +', 'True'):
            with self.assertRaises(SpecError, msg=source):
                Expression(source)

    def test_pickle(self):
        ex = pickle.loads(pickle.dumps(Expression('exp(-(x-2))')))
        self.assertEqual(ex.source, 'exp(-(x-2))')
        self.assertAlmostEqual(ex(2.0), 1.0, places=15)
