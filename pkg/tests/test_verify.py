import unittest
from fractions import Fraction

# 在导入我们自己的模块之前，确保项目根目录在 Python 的搜索路径中
import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.semigroup.models.numerical_semigroup import SemigroupError
from src.utils.resource_monitor import ResourceMonitor
from src.verify.models.scan_report import ScanReport
from src.verify.services.scan_service import ScanService, scan_service

# 完整规模的扫描较慢，默认跳过
RUN_SLOW_TESTS = os.getenv("SEMICURVE_SLOW_TESTS", "").strip() in ("1", "true", "yes")
SLOW_THREADS = max(1, os.cpu_count() or 1)


class TestWeightScans(unittest.TestCase):

    def test_lemma_weight_relation(self):
        report = scan_service.scan_lemma_weight_relation(8)
        self.assertTrue(report.ok)
        self.assertEqual(report.checked, sum([1, 1, 2, 4, 7, 12, 23, 39, 67]))
        self.assertEqual([row["count"] for row in report.table][:4], [1, 1, 2, 4])

    def test_max_weight_is_hyperelliptic(self):
        """g = 5 与 g = 12：唯一取到 C(g,2) 的是超椭圆半群"""
        for g, bound in ((5, 10), (12, 66)):
            report = scan_service.scan_max_weight(g)
            self.assertTrue(report.ok, report.violations)
            self.assertEqual(report.params["observed_max"], bound)
            self.assertEqual(len(report.achievers), 1)
            self.assertEqual(report.achievers[0]["semigroup"], f"<2,{2 * g + 1}>")

    def test_max_weight_tie_at_genus_two(self):
        """g = 2：非对称的 ⟨3,4,5⟩ 与 ⟨2,5⟩ 同样取到 W_K = 1，报告中记为违例并附说明"""
        report = scan_service.scan_max_weight(2)
        self.assertEqual(report.violated, 1)
        self.assertEqual(report.violations[0]["semigroup"], "<3,4,5>")
        self.assertEqual(sorted(a["semigroup"] for a in report.achievers), ["<2,5>", "<3,4,5>"])
        self.assertEqual(report.notes, ["g = 2: <3,4,5> attains C(g,2) = 1 without being hyperelliptic"])

    def test_submaximal_is_bielliptic_from_genus_eleven(self):
        report = scan_service.scan_submaximal(11)
        self.assertTrue(report.ok, report.violations)
        self.assertEqual(report.params["observed_max"], 38)
        self.assertEqual(
            sorted(a["semigroup"] for a in report.achievers),
            sorted(report.params["bielliptic_by_predicate"]),
        )

    def test_submaximal_genus_ten_tie(self):
        """g = 10 时 ⟨3,11⟩ 同样取到 30"""
        report = scan_service.scan_submaximal(10)
        self.assertFalse(report.params["asserted"])
        self.assertEqual(report.params["observed_max"], 30)
        self.assertIn("<3,11>", [a["semigroup"] for a in report.achievers])
        self.assertTrue(any("attains" in note for note in report.notes))

    def test_budget_is_enforced(self):
        with self.assertRaises(SemigroupError):
            scan_service.scan_max_weight(10 ** 3)


class TestKappaScans(unittest.TestCase):

    def test_kappa_one_bounds_collapse(self):
        """κ = 1、g = 12：上下界都是 47"""
        report = scan_service.scan_kappa_weight_bounds(1, 12)
        self.assertEqual(report.params["expected_min"], 47)
        self.assertEqual(report.params["expected_max"], 47)
        self.assertTrue(report.ok, report.violations)
        self.assertEqual(report.params["disparity"], 0)

    def test_s_zero_is_reported(self):
        report = scan_service.scan_kappa_weight_bounds(3, 12)
        s0 = report.params["s_zero"]
        self.assertEqual(s0["semigroup"], "<4,13,14>")
        self.assertEqual(s0["genus"], 12)
        self.assertTrue(s0["symmetric"])
        self.assertEqual(s0["W_S"], s0["expected_W_S"])

    def test_kappa_bounds_rejects_small_genus(self):
        with self.assertRaises(SemigroupError):
            scan_service.scan_kappa_weight_bounds(3, 4)

    def test_conjecture_at_kappa_zero(self):
        """κ = 0 时区间退化为 C(g,2)：W_K 取最大值当且仅当超椭圆"""
        report = scan_service.scan_conjecture(0, 1, 8)
        self.assertTrue(report.ok, report.violations[:3])
        self.assertEqual(report.threshold, 1)
        self.assertTrue(all(row["kappa_hyperelliptic"] == 1 for row in report.table))

    def test_torres_reports_a_table_per_genus(self):
        report = scan_service.scan_torres(1, 2, 8)
        self.assertEqual([row["g"] for row in report.table], list(range(2, 9)))
        self.assertEqual(report.checked, sum(row["count"] for row in report.table))

    def test_results_do_not_depend_on_threads(self):
        sequential = ScanService(threads=1).scan_conjecture(1, 2, 9).to_dict(include_runtime=False)
        parallel = ScanService(threads=2).scan_conjecture(1, 2, 9).to_dict(include_runtime=False)
        self.assertEqual(sequential, parallel)


class TestTreeScans(unittest.TestCase):

    def test_leaf_law(self):
        report = scan_service.scan_leaf_law(12)
        self.assertTrue(report.ok)
        self.assertTrue(all(row["hyperelliptic_children"] is not None for row in report.table[1:]))


@unittest.skipUnless(RUN_SLOW_TESTS, "设置 SEMICURVE_SLOW_TESTS=1 后运行完整规模的扫描")
class TestDeskScaleScans(unittest.TestCase):
    """完整规模：亏格到 14（κ-界到 20），每项需要数十秒"""

    def test_lemma_weight_relation_to_genus_fourteen(self):
        report = ScanService(threads=SLOW_THREADS).scan_lemma_weight_relation(14)
        self.assertTrue(report.ok, report.violations[:3])
        self.assertEqual(report.table[-1]["count"], 1693)

    def test_max_weight_every_genus(self):
        """g = 1..14：除 g = 2 外唯一取到 C(g,2) 的是超椭圆半群"""
        service = ScanService(threads=SLOW_THREADS)
        for g in range(1, 15):
            report = service.scan_max_weight(g)
            self.assertEqual(report.params["observed_max"], g * (g - 1) // 2, g)
            if g == 2:
                self.assertEqual(report.violated, 1)
                continue
            self.assertTrue(report.ok, (g, report.violations[:3]))
            self.assertEqual([a["semigroup"] for a in report.achievers], [f"<2,{2 * g + 1}>"])

    def test_submaximal_genus_eleven_to_fourteen(self):
        service = ScanService(threads=SLOW_THREADS)
        for g in range(11, 15):
            report = service.scan_submaximal(g)
            self.assertTrue(report.ok, (g, report.violations))
            self.assertEqual(report.params["observed_max"], (g * g - 5 * g + 10) // 2)
            self.assertEqual(
                sorted(a["semigroup"] for a in report.achievers),
                sorted(report.params["bielliptic_by_predicate"]),
            )

    def test_kappa_three_genus_twenty(self):
        """κ = 3、g = 20：最小 97 在 (8,10,12)，最大 103 在 (4,8,12)，差 6"""
        report = ScanService(threads=SLOW_THREADS).scan_kappa_weight_bounds(3, 20)
        self.assertTrue(report.ok, report.violations)
        self.assertEqual((report.params["expected_min"], report.params["expected_max"]), (97, 103))
        self.assertEqual(report.params["disparity"], 6)
        low, high = report.achievers
        self.assertEqual((low["extreme"], low["W_K"], low["patterns"]), ("min", 97, [[8, 10, 12]]))
        self.assertEqual((high["extreme"], high["W_K"], high["patterns"]), ("max", 103, [[4, 8, 12]]))


class TestGenus3Family(unittest.TestCase):

    def test_explicit_samples(self):
        samples = [(Fraction(1), Fraction(1), Fraction(1), Fraction(1)),
                   (Fraction(1), Fraction(1), Fraction(1), Fraction(0))]
        report = scan_service.scan_genus3_family(samples)
        self.assertTrue(report.ok, report.violations)
        self.assertEqual(report.checked, 2)
        self.assertEqual(report.table[0]["semigroup"], "<2,7>")

    def test_default_samples_are_reproducible(self):
        first = scan_service.default_genus3_samples(count=5, seed=7)
        second = scan_service.default_genus3_samples(count=5, seed=7)
        self.assertEqual(first, second)
        for a, b, c, _ in first:
            self.assertNotEqual(a * c, 0)
            self.assertNotEqual(c + a * b - a ** 3, 0)


class TestScanReport(unittest.TestCase):

    def test_record_and_serialize(self):
        report = ScanReport("demo", (2, 4))
        report.record(True)
        report.record(False, {"semigroup": "<3,4>"})
        self.assertFalse(report.ok)
        data = report.to_dict(include_runtime=False)
        self.assertEqual((data["checked"], data["violated"]), (2, 1))
        self.assertNotIn("runtime", data)
        self.assertIn("runtime", report.to_dict())

    def test_csv_summary_row(self):
        header, rows = ScanReport("demo", (2, 4), checked=3, satisfied=3).csv_rows()
        self.assertEqual(header[0], "statement")
        self.assertEqual(rows, [["demo", "2", "4", "3", "3", "0", ""]])

    def test_csv_table_rows(self):
        report = ScanReport("demo", (1, 1), table=[{"g": 1, "ok": True}, {"g": 2, "extra": [1, 2]}])
        header, rows = report.csv_rows()
        self.assertEqual(header, ["g", "ok", "extra"])
        self.assertEqual(rows[1], ["2", "", "1 2"])


class TestResourceMonitor(unittest.TestCase):

    def test_records_duration_and_rss(self):
        with ResourceMonitor(interval=0.01) as monitor:
            sum(range(10 ** 5))
        self.assertGreater(monitor.peak_rss_mb, 0)
        self.assertGreaterEqual(monitor.duration_s, 0)


if __name__ == '__main__':
    unittest.main()
