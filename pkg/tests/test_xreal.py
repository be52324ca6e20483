import math
import pickle
import unittest

from hypothesis import given, strategies as st

from overlap_gen.lib.errors import IndeterminateSum
from overlap_gen.lib.xreal import \
    EQ, GT, INF, LT, NINF, ONE, ZERO, XReal, affine_apply, affine_inverse, \
    affine_map, finite, xadd, xcmp, xmax, xmin


finite_values = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)
xreals = st.one_of(finite_values.map(finite), st.sampled_from([INF, NINF]))
slopes = st.floats(min_value=0.1, max_value=10.0)


class XRealTest(unittest.TestCase):

    def test_of(self):
        self.assertEqual(XReal.of('inf'), INF)
        self.assertEqual(XReal.of('-inf'), NINF)
        self.assertEqual(XReal.of(float('inf')), INF)
        self.assertEqual(XReal.of(2), finite(2.0))
        self.assertIs(XReal.of(ONE), ONE)
        with self.assertRaises(ValueError):
            XReal.of(float('nan'))
        with self.assertRaises(ValueError):
            finite(math.inf)

    def test_immutable(self):
        with self.assertRaises(AttributeError):
            ONE.value = 2.0

    def test_pickle(self):
        for x in (INF, NINF, finite(-2.5)):
            self.assertEqual(pickle.loads(pickle.dumps(x)), x)

    def test_json(self):
        self.assertEqual(INF.to_json(), 'inf')
        self.assertEqual(NINF.to_json(), '-inf')
        self.assertEqual(finite(0.5).to_json(), 0.5)
        self.assertEqual(INF.to_float(), math.inf)

    def test_order(self):
        self.assertEqual(xcmp(NINF, finite(-1e300)), LT)
        self.assertEqual(xcmp(INF, finite(1e300)), GT)
        self.assertEqual(xcmp(INF, INF), EQ)
        self.assertEqual(xcmp(finite(0.0), finite(-0.0)), EQ)
        self.assertTrue(NINF < ZERO < ONE < INF)
        self.assertEqual(xmax(ONE, INF), INF)
        self.assertEqual(xmin(ONE, NINF), NINF)
        self.assertEqual(-INF, NINF)

    def test_xadd(self):
        self.assertEqual(xadd(finite(2.0), finite(3.0)), finite(5.0))
        self.assertEqual(xadd(INF, finite(-7.0)), INF)
        self.assertEqual(xadd(finite(7.0), NINF), NINF)
        self.assertEqual(xadd(INF, INF), INF)
        self.assertEqual(xadd(NINF, NINF), NINF)
        with self.assertRaises(IndeterminateSum):
            xadd(INF, NINF)
        with self.assertRaises(IndeterminateSum):
            xadd(NINF, INF)

    def test_affine(self):
        m = affine_map(2.0, 1.0)
        self.assertEqual(affine_apply(m, finite(3.0)), finite(7.0))
        self.assertEqual(affine_apply(m, INF), INF)
        self.assertEqual(affine_apply(affine_map(-2.0, 1.0), INF), NINF)
        self.assertEqual(affine_apply(affine_map(-2.0, 1.0), NINF), INF)
        self.assertEqual(affine_apply(affine_map(0.0, 4.0), INF), finite(4.0))
        self.assertEqual(affine_inverse(m), affine_map(0.5, -0.5))
        with self.assertRaises(ZeroDivisionError):
            affine_inverse(affine_map(0.0, 1.0))
        with self.assertRaises(ValueError):
            affine_map(math.inf, 0.0)

    @given(xreals, xreals)
    def test_xadd_commutes(self, a, b):
        try:
            s = xadd(a, b)
        except IndeterminateSum:
            with self.assertRaises(IndeterminateSum):
                xadd(b, a)
            return
        self.assertEqual(s, xadd(b, a))

    @given(xreals)
    def test_xadd_zero(self, a):
        self.assertEqual(xadd(a, ZERO), a)

    @given(slopes, st.sampled_from([1.0, -1.0]),
           st.floats(min_value=-5.0, max_value=5.0), xreals)
    def test_affine_round_trip(self, k, sign, b, x):
        m = affine_map(sign * k, b)
        y = affine_apply(affine_inverse(m), affine_apply(m, x))
        if x.is_finite:
            self.assertTrue(y.is_finite)
            self.assertLessEqual(abs(y.value - x.value),
                                 1e-9 * max(1.0, abs(x.value)))
        else:
            self.assertEqual(y, x)

    @given(slopes, st.sampled_from([1.0, -1.0]),
           st.floats(min_value=-5.0, max_value=5.0), xreals, xreals)
    def test_affine_monotone(self, k, sign, b, x, y):
        if xcmp(x, y) == GT:
            x, y = y, x
        m = affine_map(sign * k, b)
        fx, fy = affine_apply(m, x), affine_apply(m, y)
        if sign > 0:
            self.assertNotEqual(xcmp(fx, fy), GT)
        else:
            self.assertNotEqual(xcmp(fx, fy), LT)
