import unittest

# 在导入我们自己的模块之前，确保项目根目录在 Python 的搜索路径中
import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.curve.models.curve import CurveError, CurveParametrization, ScrollLayout
from src.curve.services.scroll_service import scroll_service
from src.semigroup.services.numset_service import numset_service


class TestScrollContainment(unittest.TestCase):

    def test_rational_normal_curve_block(self):
        """(1, t, t², t⁴)：前三个坐标的 2×2 子式恒为零"""
        curve = CurveParametrization.of("1", "t", "t^2", "t^4")
        self.assertTrue(scroll_service.verify_scroll_containment(curve, ScrollLayout((2, 0), (0, 1, 2, 3))))

    def test_containment_fails(self):
        curve = CurveParametrization.of("1", "t", "t^3")
        self.assertFalse(scroll_service.verify_scroll_containment(curve, ScrollLayout((2,), (0, 1, 2))))

    def test_wrong_layout_is_rejected(self):
        """超椭圆嵌入的坐标排错块时不在卷轴上"""
        curve, layout = scroll_service.hyperelliptic_embedding(3)
        self.assertTrue(scroll_service.verify_scroll_containment(curve, layout))
        wrong = ScrollLayout((0, 3), (0, 1, 2, 3, 4))
        self.assertFalse(scroll_service.verify_scroll_containment(curve, wrong))

    def test_layout_validation(self):
        with self.assertRaises(CurveError):
            ScrollLayout((1, 1), (0, 1, 2))
        with self.assertRaises(CurveError):
            ScrollLayout((2,), (0, 1, 3))
        curve = CurveParametrization.of("1", "t^2", "t^3")
        with self.assertRaises(CurveError):
            scroll_service.verify_scroll_containment(curve, ScrollLayout((3,), (0, 1, 2, 3)))

    def test_layout_matrix(self):
        layout = ScrollLayout((2, 1), (0, 1, 2, 3, 4))
        self.assertEqual(layout.matrix(), ((0, 1, 3), (1, 2, 4)))
        self.assertEqual(layout.name, "S_{2,1}")


class TestEmbeddings(unittest.TestCase):

    def test_hyperelliptic_embedding(self):
        for g in range(1, 7):
            curve, layout = scroll_service.hyperelliptic_embedding(g)
            self.assertEqual(len(curve.polys), g + 2)
            self.assertTrue(scroll_service.verify_scroll_containment(curve, layout), g)

    def test_bielliptic_embeddings(self):
        """对称 g = 8、12 与非对称 g = 5、9"""
        for g, index in ((8, 0), (12, 0), (5, 1), (9, 1)):
            s = numset_service.bielliptic_semigroups(g)[index]
            curve, layout = scroll_service.bielliptic_embedding(s)
            self.assertEqual(len(curve.polys), g + 2)
            self.assertEqual(max(p.degree for p in curve.polys), 2 * g + 1)
            self.assertEqual(len(layout.block_sizes), 3 if index == 0 else 4)
            self.assertTrue(scroll_service.verify_scroll_containment(curve, layout), (g, index))

    def test_bielliptic_embedding_rejects_other_semigroups(self):
        with self.assertRaises(CurveError):
            scroll_service.bielliptic_embedding(numset_service.from_generators([3, 13, 14]))


class TestScrollCodimension(unittest.TestCase):

    def test_monomial_trigonal_curve(self):
        """(1, t³, t¹³, t¹⁴)：U = {t³}，余维数 1"""
        report = scroll_service.scroll_codimension(CurveParametrization.of("1", "t^3", "t^13", "t^14"))
        self.assertEqual(report.codimension, 1)
        self.assertIsNone(report.linear_forms)
        self.assertIsNone(report.minors_vanish)

    def test_hyperelliptic_embedding_codimension(self):
        for g in (3, 4, 5):
            curve, _ = scroll_service.hyperelliptic_embedding(g)
            report = scroll_service.scroll_codimension(curve)
            self.assertEqual(report.codimension, g - 1, g)
            self.assertIsNotNone(report.linear_forms)
            self.assertTrue(report.minors_vanish)

    def test_linear_forms_are_checked_against_the_curve(self):
        """用报告给出的线性型代入坐标：原矩阵通过，改动一列后不通过"""
        curve, _ = scroll_service.hyperelliptic_embedding(3)
        forms = scroll_service.scroll_codimension(curve).linear_forms
        self.assertTrue(scroll_service.verify_linear_forms(curve, forms))
        broken = [list(forms[0]), list(forms[1])]
        broken[1][0] = broken[0][0]
        self.assertFalse(scroll_service.verify_linear_forms(curve, broken))

    def test_linear_forms_shape(self):
        curve = CurveParametrization.of("1", "t^2", "t^3")
        with self.assertRaises(CurveError):
            scroll_service.verify_linear_forms(curve, [[[1, 0, 0]], []])

    def test_symmetric_bielliptic_codimension(self):
        s = numset_service.bielliptic_semigroups(8)[0]
        curve, _ = scroll_service.bielliptic_embedding(s)
        self.assertEqual(scroll_service.scroll_codimension(curve).codimension, 6)

    def test_irrational_roots(self):
        with self.assertRaises(CurveError) as ctx:
            scroll_service.scroll_codimension(CurveParametrization.of("1 + t^2", "t^2", "t^3"))
        self.assertIn("irrational roots unsupported", str(ctx.exception))

    def test_report_serializes(self):
        data = scroll_service.scroll_codimension(CurveParametrization.of("1", "t^3", "t^13", "t^14")).to_dict()
        self.assertEqual(data["U"], ["t^3"])
        self.assertFalse(data["in_coordinates"])


if __name__ == '__main__':
    unittest.main()
