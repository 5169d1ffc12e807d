import unittest

# 在导入我们自己的模块之前，确保项目根目录在 Python 的搜索路径中
import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.semigroup.models.numerical_semigroup import SemigroupError
from src.semigroup.services.numset_service import numset_service
from src.semigroup.services.tree_service import tree_service

# OEIS A007323
KNOWN_COUNTS = [1, 1, 2, 4, 7, 12, 23, 39, 67, 118, 204, 343, 592]


def genus_and_conductor(s):
    """进程池要求可 pickle 的模块级函数"""
    return s.genus, s.conductor, s.minimal_generators


class TestTreeNavigation(unittest.TestCase):

    def test_children_of_root(self):
        """ℕ 唯一的子节点是 ⟨2,3⟩"""
        root = numset_service.from_generators([1])
        kids = tree_service.children(root)
        self.assertEqual([k.minimal_generators for k in kids], [(2, 3)])

    def test_parent_adds_frobenius(self):
        s = numset_service.from_generators([3, 13, 14])
        parent = tree_service.parent(s)
        self.assertEqual(parent.genus, s.genus - 1)
        self.assertIn(s.frobenius, parent)
        self.assertIn(s, tree_service.children(parent))

    def test_root_has_no_parent(self):
        with self.assertRaises(SemigroupError) as ctx:
            tree_service.parent(numset_service.from_generators([1]))
        self.assertIn("root has no parent", str(ctx.exception))

    def test_symmetric_nonhyperelliptic_is_leaf(self):
        """⟨3,4⟩ 对称且非超椭圆，没有子节点"""
        self.assertEqual(tree_service.children(numset_service.from_generators([3, 4])), [])

    def test_children_drop_generators_above_frobenius(self):
        """⟨2,5⟩ 的 Frobenius 数为 3，只能去掉 5"""
        kids = tree_service.children(numset_service.from_generators([2, 5]))
        self.assertEqual([k.minimal_generators for k in kids], [(2, 7)])


class TestEnumeration(unittest.TestCase):

    def test_counts_match_known_sequence(self):
        self.assertEqual(tree_service.count_by_genus(12), KNOWN_COUNTS)

    def test_counts_match_brute_force(self):
        """g ≤ 8：树枚举与间隙子集暴力筛选的结果完全一致"""
        for g in range(9):
            by_tree = sorted(s.key for s in tree_service.iter_genus(g))
            by_brute_force = sorted(s.key for s in tree_service.brute_force_genus(g))
            self.assertEqual(by_tree, by_brute_force, f"genus {g}")

    def test_iter_genus_has_no_duplicates(self):
        found = tree_service.iter_genus(7)
        self.assertEqual(len(found), 39)
        self.assertEqual(len({s.key for s in found}), 39)

    def test_every_enumerated_set_is_a_semigroup(self):
        for s in tree_service.iter_genus(6):
            self.assertTrue(numset_service.is_semigroup(s))
            self.assertEqual(s.genus, 6)

    def test_map_genus_range_groups_by_genus(self):
        results = tree_service.map_genus_range(3, 5, genus_and_conductor)
        self.assertEqual(sorted(results), [3, 4, 5])
        self.assertEqual([len(results[g]) for g in (3, 4, 5)], [4, 7, 12])
        self.assertTrue(all(r[0] == g for g in results for r in results[g]))

    def test_parallel_matches_sequential(self):
        """并行结果与顺序执行逐项相同（含顺序）"""
        sequential = tree_service.map_genus_range(9, 10, genus_and_conductor, threads=1)
        parallel = tree_service.map_genus_range(9, 10, genus_and_conductor, threads=2)
        self.assertEqual(sequential, parallel)
        self.assertEqual(tree_service.count_by_genus(10, threads=2), KNOWN_COUNTS[:11])

    def test_invalid_range(self):
        with self.assertRaises(SemigroupError):
            tree_service.map_genus_range(5, 3, genus_and_conductor)
        with self.assertRaises(SemigroupError):
            tree_service.count_by_genus(-1)


if __name__ == '__main__':
    unittest.main()
