import unittest
from fractions import Fraction

# 在导入我们自己的模块之前，确保项目根目录在 Python 的搜索路径中
import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.curve.models.series import (
    Poly,
    SeriesError,
    TruncatedSeries,
    expand,
    format_fraction,
    poly_gcd,
    to_fraction,
)
from src.curve.models.triangular_basis import TriangularBasis


def P(text):
    return Poly.parse(text)


class TestPoly(unittest.TestCase):

    def test_parse_and_print(self):
        p = Poly.parse("1 - 2*t + 3/2*t^4")
        self.assertEqual(p.coeffs, (1, -2, 0, 0, Fraction(3, 2)))
        self.assertEqual(str(p), "1 - 2*t + 3/2*t^4")
        self.assertEqual(Poly.parse("(1 + t^3)^3"), Poly((1, 0, 0, 3, 0, 0, 3, 0, 0, 1)))

    def test_parse_rejects_malformed_text(self):
        with self.assertRaises(SeriesError):
            Poly.parse("1 + * t")

    def test_arithmetic(self):
        a = Poly.parse("1 + t")
        b = Poly.parse("1 - t")
        self.assertEqual(a * b, Poly.parse("1 - t^2"))
        self.assertEqual(a + b, Poly.constant(2))
        self.assertEqual((a - a).degree, -1)
        self.assertEqual(a ** 3, Poly.parse("1 + 3*t + 3*t^2 + t^3"))

    def test_valuation_and_evaluation(self):
        p = Poly.parse("t^4 + t^7")
        self.assertEqual(p.valuation, 4)
        self.assertEqual(p(2), 16 + 128)
        self.assertIsNone(Poly().valuation)

    def test_gcd_and_exact_division(self):
        a = Poly.parse("t^2 - 1")
        b = Poly.parse("2*t - 2")
        self.assertEqual(a.gcd(b), Poly.parse("t - 1"))
        self.assertEqual(a.exact_div(Poly.parse("t + 1")), Poly.parse("t - 1"))
        with self.assertRaises(SeriesError):
            a.exact_div(Poly.parse("t + 2"))
        self.assertEqual(poly_gcd([Poly.parse("1"), Poly.parse("t^4")]), Poly.constant(1))

    def test_roots_and_taylor_shift(self):
        p = Poly.parse("(1 - t)^2 * (2 + t) * (t^2 + 1)")
        self.assertEqual(p.rational_roots(), {Fraction(1): 2, Fraction(-2): 1})
        self.assertFalse(p.splits_over_q())
        self.assertEqual(p.multiplicity_at(1), 2)
        self.assertEqual(p.multiplicity_at(3), 0)
        self.assertEqual(Poly.parse("t^2").taylor_shift(1), Poly.parse("1 + 2*t + t^2"))

    def test_compose_power(self):
        self.assertEqual(Poly.parse("1 + t").compose_power(3), Poly.parse("1 + t^3"))


class TestTruncatedSeries(unittest.TestCase):

    def test_inverse_of_unit(self):
        """1/(1 − t) = 1 + t + t² + …"""
        s = TruncatedSeries.from_poly(Poly.parse("1 - t"), 6)
        self.assertEqual(s.inverse().coeffs, (1,) * 6)
        self.assertEqual((s * s.inverse()).coeffs, (1, 0, 0, 0, 0, 0))

    def test_non_unit_is_rejected(self):
        with self.assertRaises(SeriesError) as ctx:
            TruncatedSeries.from_poly(Poly.parse("t + t^2"), 5).inverse()
        self.assertIn("not a unit at t=0", str(ctx.exception))

    def test_expand_rational_function(self):
        """t²/(1 + t³) = t² − t⁵ + t⁸ − …"""
        s = expand(Poly.parse("t^2"), Poly.parse("1 + t^3"), 10)
        self.assertEqual(s.coeffs, (0, 0, 1, 0, 0, -1, 0, 0, 1, 0))
        self.assertEqual(s.valuation(), 2)

    def test_expand_times_denominator_recovers_numerator(self):
        """expand(f, h, N)·h ≡ f (mod t^N)"""
        order = 12
        for f, h in ((P("t^2"), P("1 + t^3")),
                     (P("3 - t + 2*t^5"), P("2 + t - t^4")),
                     (P("t^4*(1 + t^3)"), P("(1 + t^3)^3"))):
            product = expand(f, h, order) * TruncatedSeries.from_poly(h, order)
            self.assertEqual(product.coeffs, TruncatedSeries.from_poly(f, order).coeffs, (str(f), str(h)))

    def test_powers_of_u_satisfy_the_cusp_relation(self):
        """u = t²/(1 + t³)：(u²)³ − (u³)² = 0，且 u² 与 u³ 就是按各自分母展开的结果"""
        order = 20
        u = expand(P("t^2"), P("1 + t^3"), order)
        u2 = expand(P("t^4"), P("(1 + t^3)^2"), order)
        u3 = expand(P("t^6"), P("(1 + t^3)^3"), order)
        self.assertEqual((u ** 2).coeffs, u2.coeffs)
        self.assertEqual((u ** 3).coeffs, u3.coeffs)
        self.assertTrue((u2 ** 3 - u3 ** 2).is_zero())
        self.assertFalse((u2 ** 3).is_zero())

    def test_mixed_orders_truncate_to_the_smaller(self):
        a = TruncatedSeries.from_poly(Poly.parse("1 + t"), 3)
        b = TruncatedSeries.from_poly(Poly.parse("1 + t"), 5)
        self.assertEqual((a * b).order, 3)
        self.assertEqual((a + b).order, 3)

    def test_valuation_beyond_order(self):
        s = TruncatedSeries.from_poly(Poly.parse("t^7"), 5)
        self.assertIsNone(s.valuation())
        self.assertTrue(s.is_zero())


class TestRationals(unittest.TestCase):

    def test_to_fraction(self):
        self.assertEqual(to_fraction("3/4"), Fraction(3, 4))
        self.assertEqual(to_fraction(-2), Fraction(-2))
        with self.assertRaises(SeriesError):
            to_fraction(0.5)
        with self.assertRaises(SeriesError):
            to_fraction("abc")

    def test_format_fraction(self):
        self.assertEqual(format_fraction(Fraction(-3, 4)), "-3/4")
        self.assertEqual(format_fraction(Fraction(6, 3)), "2")


class TestTriangularBasis(unittest.TestCase):

    def setUp(self):
        self.order = 10
        self.basis = TriangularBasis(self.order)
        for text in ("1", "t^4", "t^6 + t^7"):
            self.basis.insert(TruncatedSeries.from_poly(Poly.parse(text), self.order))

    def test_values(self):
        self.assertEqual(self.basis.values, (0, 4, 6))
        self.assertIn(4, self.basis)
        self.assertNotIn(5, self.basis)

    def test_dependent_element_is_not_inserted(self):
        s = TruncatedSeries.from_poly(Poly.parse("2 + 3*t^4"), self.order)
        self.assertIsNone(self.basis.insert(s))
        self.assertTrue(self.basis.contains(s))
        self.assertEqual(len(self.basis), 3)

    def test_membership_uses_full_reduction(self):
        """t⁶ 的首项值在值集中，但 t⁶ 本身不在张成空间里"""
        s = TruncatedSeries.from_poly(Poly.parse("t^6"), self.order)
        self.assertFalse(self.basis.contains(s))
        self.assertEqual(self.basis.reduce(s).valuation(), 7)


if __name__ == '__main__':
    unittest.main()
