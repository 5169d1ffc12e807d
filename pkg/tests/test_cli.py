import json
import shutil
import tempfile
import unittest
from unittest.mock import patch

# 在导入我们自己的模块之前，确保项目根目录在 Python 的搜索路径中
import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src import config
from src.main import run
from src.utils.curve_loader import (
    CurveFileError,
    curve_from_mapping,
    load_curve_file,
    parse_pair,
    parse_poly,
)
from src.curve.models.series import Poly

try:
    import tomllib  # noqa: F401
    HAS_TOML = True
except ImportError:
    HAS_TOML = False


def curve_path(name):
    return os.path.join(config.EXAMPLES_DIR, name)


class CliTestCase(unittest.TestCase):
    """每个测试把输出写到临时目录中的文件"""

    def setUp(self):
        self.tmp = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmp, ignore_errors=True)

    def run_json(self, *argv):
        out = os.path.join(self.tmp, "out.json")
        code = run([*argv, "--out", out])
        self.assertEqual(code, 0)
        with open(out, "r", encoding="utf-8") as f:
            return json.load(f)

    def run_text(self, *argv):
        out = os.path.join(self.tmp, "out.txt")
        code = run([*argv, "--out", out])
        with open(out, "r", encoding="utf-8") as f:
            return code, f.read()


class TestSemigroupCommands(CliTestCase):

    def test_semigroup_info(self):
        data = self.run_json("semigroup", "info", "--gens", "3,13,14")
        self.assertEqual(data["g"], 8)
        self.assertEqual(data["W_K"], 16)

    def test_semigroup_info_from_gaps(self):
        data = self.run_json("semigroup", "info", "--gaps", "1,2,3,5,6,7,9,13")
        self.assertEqual(data["W_S"], 10)
        self.assertEqual(data["W_K"], 12)

    def test_tableau_render(self):
        data = self.run_json("tableau", "render", "--gens", "4,10,11,17")
        self.assertEqual(data["top_rows"], [5, 7])
        self.assertTrue(data["transpose_ok"])

    def test_tree_count_csv(self):
        code, text = self.run_text("tree", "count", "--max-genus", "6", "--format", "csv")
        self.assertEqual(code, 0)
        lines = text.splitlines()
        self.assertEqual(lines[0], f"# semicurve csv v{config.CSV_SCHEMA_VERSION} tree-count")
        self.assertEqual(lines[1], "g,count")
        self.assertEqual(lines[-1], "6,23")

    def test_tree_count_accepts_genus(self):
        data = self.run_json("tree", "count", "--genus", "6")
        self.assertEqual(data["max_genus"], 6)
        self.assertEqual(data["counts"][-1], 23)

    def test_tree_dump(self):
        data = self.run_json("tree", "dump", "--genus", "4")
        self.assertEqual(len(data["semigroups"]), 7)


class TestVerifyCommands(CliTestCase):

    def test_submaximal(self):
        data = self.run_json("verify", "submaximal", "--genus", "11")
        self.assertEqual(data["violated"], 0)
        self.assertEqual(data["params"]["observed_max"], 38)
        self.assertIn("runtime", data)

    def test_omit_runtime_makes_output_deterministic(self):
        first = self.run_json("verify", "lemma-k", "--max-genus", "7", "--omit-runtime")
        second = self.run_json("verify", "lemma-k", "--max-genus", "7", "--omit-runtime", "--threads", "2")
        self.assertNotIn("runtime", first)
        self.assertEqual(first, second)

    def test_fail_on_violation(self):
        """κ = 1 的 Torres 区间在小亏格有违例"""
        argv = ("verify", "torres", "--kappa", "1", "--max-genus", "8")
        code, _ = self.run_text(*argv)
        self.assertEqual(code, 0)
        code, _ = self.run_text(*argv, "--fail-on-violation")
        self.assertEqual(code, 1)

    def test_missing_genus_is_an_input_error(self):
        with patch("sys.stderr"):
            self.assertEqual(run(["verify", "max-weight"]), 2)


class TestCurveCommands(CliTestCase):

    def test_analyze_example_one(self):
        data = self.run_json("curve", "analyze", curve_path("example1.json"))
        self.assertEqual(data["semigroup"], "<4,6,13>")
        self.assertEqual(data["g83"]["verdict"], "birational: nonbielliptic")

    def test_bielliptic_example_two(self):
        data = self.run_json("curve", "bielliptic", curve_path("example2.json"))
        self.assertEqual(data["g83"]["map_degree"], 3)
        self.assertEqual(data["bielliptic"]["answer"], "no")

    def test_hyperelliptic_yaml(self):
        data = self.run_json("curve", "hyperelliptic", curve_path("genus3_sample.yaml"))
        self.assertEqual(data["hyperelliptic"]["answer"], "no")

    @unittest.skipUnless(HAS_TOML, "需要 Python 3.11 的 tomllib")
    def test_gonality_toml(self):
        data = self.run_json("curve", "gonality", curve_path("genus2.toml"))
        self.assertEqual(data["gonality"]["upper"], 2)

    def test_embedding(self):
        data = self.run_json("curve", "embedding", "bielliptic-symmetric", "--genus", "8")
        self.assertTrue(data["contained"])

    def test_missing_file(self):
        with patch("sys.stderr"):
            self.assertEqual(run(["curve", "analyze", os.path.join(self.tmp, "nope.json")]), 2)

    def test_bad_gcd(self):
        path = os.path.join(self.tmp, "bad.json")
        with open(path, "w", encoding="utf-8") as f:
            json.dump({"f": ["t", "t^2"]}, f)
        with patch("sys.stderr"):
            self.assertEqual(run(["curve", "analyze", path]), 2)


class TestCurveLoader(unittest.TestCase):

    def test_parse_poly_forms(self):
        self.assertEqual(parse_poly([1, 0, "1/2"]), Poly.parse("1 + 1/2*t^2"))
        self.assertEqual(parse_poly(3), Poly.constant(3))
        self.assertEqual(parse_poly("t^2 - t"), Poly((0, -1, 1)))
        with self.assertRaises(CurveFileError):
            parse_poly({"t": 1})

    def test_curve_from_mapping(self):
        loaded = curve_from_mapping({"f": ["1", "t^4", "t^6 + t^7"], "u": ["t^2", "1"]})
        self.assertEqual(len(loaded.curve.polys), 3)
        self.assertEqual(loaded.u, (Poly.parse("t^2"), Poly.constant(1)))
        with self.assertRaises(CurveFileError):
            curve_from_mapping({"f": ["1"]})
        with self.assertRaises(CurveFileError):
            curve_from_mapping({"g": []})

    def test_parse_pair(self):
        self.assertEqual(parse_pair("t^2,1 + t^3"), (Poly.parse("t^2"), Poly.parse("1 + t^3")))
        with self.assertRaises(CurveFileError):
            parse_pair("t^2")

    def test_example_files_load(self):
        loaded = load_curve_file(curve_path("example2.json"))
        self.assertEqual(loaded.curve.conductor, 8)
        self.assertIsNotNone(loaded.u)


if __name__ == '__main__':
    unittest.main()
