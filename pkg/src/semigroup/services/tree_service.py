# -*- coding: utf-8 -*-

import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Dict, List, Optional, Tuple

from src.semigroup.config import semigroup_config as cfg
from src.semigroup.models.numerical_semigroup import NumericalSemigroup, SemigroupError
from src.semigroup.models.tree_node import FastNode, TreeNode
from src.semigroup.services.numset_service import numset_service

log = logging.getLogger(__name__)

Visitor = Callable[[NumericalSemigroup], None]


def _root(length: int) -> FastNode:
    """根 ℕ：i 有 ⌊i/2⌋ + 1 种写成 a + b（a ≤ b）的方式"""
    return FastNode([i // 2 + 1 for i in range(length)], 0, 1, 0)


def _child_nodes(node: FastNode) -> List[FastNode]:
    """去掉大于 Frobenius 数的极小生成元，按生成元升序返回子节点"""
    dec = node.decomposition
    length = len(dec)
    c, m = node.conductor, node.multiplicity
    kids = []
    for y in range(max(c, 1), min(c + m + 1, length)):
        if dec[y] != 1:
            continue
        child = dec[:]
        child[y] = 0
        for z in range(y + 1, length):
            if dec[z - y] > 0:
                child[z] -= 1
        kids.append(FastNode(child, y + 1, m + 1 if y == m else m, node.genus + 1))
    return kids


def _walk(root: FastNode, g_min: int, g_max: int, emit: Callable[[FastNode], None]):
    """显式栈的先序 DFS，亏格落在 [g_min, g_max] 的节点交给 emit"""
    stack = [root]
    while stack:
        node = stack.pop()
        if node.genus >= g_min:
            emit(node)
        if node.genus < g_max:
            stack.extend(reversed(_child_nodes(node)))


def _subtree_task(payload: Tuple[Tuple, int, int, Optional[Callable]]) -> Dict[int, List[Any]]:
    """进程池任务：遍历一棵子树，按亏格收集 fn(S)；fn 为 None 时只计数"""
    node_tuple, g_min, g_max, fn = payload
    results: Dict[int, List[Any]] = {}
    counts: Dict[int, int] = {}

    def emit(node: FastNode):
        if fn is None:
            counts[node.genus] = counts.get(node.genus, 0) + 1
        else:
            results.setdefault(node.genus, []).append(fn(node.to_semigroup()))

    _walk(FastNode(*node_tuple), g_min, g_max, emit)
    return counts if fn is None else results


class TreeService:
    """
    数值半群树：父节点加入 Frobenius 数，子节点去掉大于 Frobenius 数的极小生成元。
    """

    def children(self, s: NumericalSemigroup) -> List[NumericalSemigroup]:
        c = s.conductor
        kids = []
        for x in s.minimal_generators:
            if x <= s.frobenius:
                continue
            members = s.members_below_conductor + tuple(range(c, x))
            kids.append(NumericalSemigroup(members, x + 1))
        return kids

    def parent(self, s: NumericalSemigroup) -> NumericalSemigroup:
        if s.genus == 0:
            raise SemigroupError("root has no parent")
        return NumericalSemigroup.from_members(s.members_below_conductor + (s.frobenius,), s.conductor)

    def node(self, s: NumericalSemigroup) -> TreeNode:
        return TreeNode(semigroup=s, depth=s.genus)

    # --- 枚举 ---
    def _length(self, g_max: int) -> int:
        return cfg.DECOMPOSITION_FACTOR * max(g_max, 1) + cfg.DECOMPOSITION_PADDING

    def enumerate_genus(self, g: int, visitor: Visitor) -> None:
        """按先序（子节点按去掉的生成元升序）访问亏格恰为 g 的全部半群"""
        if g < 0:
            raise SemigroupError(f"Genus must be nonnegative, got {g}")
        _walk(_root(self._length(g)), g, g, lambda node: visitor(node.to_semigroup()))

    def iter_genus(self, g: int) -> List[NumericalSemigroup]:
        found: List[NumericalSemigroup] = []
        self.enumerate_genus(g, found.append)
        return found

    def _frontier(self, root: FastNode, depth: int, g_min: int, g_max: int,
                  shallow: Callable[[FastNode], None]) -> List[FastNode]:
        """
        先序收集深度为 depth 的节点作为并行子树根；
        更浅且落在 [g_min, g_max] 内的节点在主进程中交给 shallow。
        """
        frontier: List[FastNode] = []
        stack = [root]
        while stack:
            node = stack.pop()
            if node.genus == depth:
                frontier.append(node)
                continue
            if node.genus >= g_min:
                shallow(node)
            stack.extend(reversed(_child_nodes(node)))
        return frontier

    def map_genus_range(self, g_min: int, g_max: int, fn: Callable[[NumericalSemigroup], Any],
                        threads: int = 1) -> Dict[int, List[Any]]:
        """
        对亏格在 [g_min, g_max] 的每个半群计算 fn(S)，按亏格分组、组内按先序排列。

        并行时 fn 必须是可 pickle 的模块级函数；结果与顺序执行逐项一致。

        Args:
            g_min: 最小亏格。
            g_max: 最大亏格。
            fn: 作用在每个半群上的函数。
            threads: 工作进程数，1 表示顺序执行。
        """
        if g_min < 0 or g_max < g_min:
            raise SemigroupError(f"Invalid genus range [{g_min}, {g_max}]")
        results: Dict[int, List[Any]] = {g: [] for g in range(g_min, g_max + 1)}
        root = _root(self._length(g_max))

        def collect(node: FastNode):
            results[node.genus].append(fn(node.to_semigroup()))

        if threads <= 1 or g_max < cfg.PARALLEL_MIN_GENUS:
            _walk(root, g_min, g_max, collect)
            return results

        depth = math.ceil(g_max / cfg.SPLIT_DIVISOR)
        frontier = self._frontier(root, depth, g_min, g_max, collect)
        log.info(f"并行遍历：{len(frontier)} 棵深度 {depth} 的子树分发给 {threads} 个进程")
        payloads = [(node.to_tuple(), g_min, g_max, fn) for node in frontier]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(_subtree_task, payloads):
                for g, values in part.items():
                    results[g].extend(values)
        return results

    def map_genus(self, g: int, fn: Callable[[NumericalSemigroup], Any], threads: int = 1) -> List[Any]:
        return self.map_genus_range(g, g, fn, threads)[g]

    def count_by_genus(self, g_max: int, threads: int = 1) -> List[int]:
        """返回 [n₀, …, n_{g_max}]"""
        if g_max < 0:
            raise SemigroupError(f"Genus must be nonnegative, got {g_max}")
        counts = [0] * (g_max + 1)
        root = _root(self._length(g_max))

        def tally(node: FastNode):
            counts[node.genus] += 1

        if threads <= 1 or g_max < cfg.PARALLEL_MIN_GENUS:
            _walk(root, 0, g_max, tally)
            return counts

        depth = math.ceil(g_max / cfg.SPLIT_DIVISOR)
        frontier = self._frontier(root, depth, 0, g_max, tally)
        payloads = [(node.to_tuple(), 0, g_max, None) for node in frontier]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for part in pool.map(_subtree_task, payloads):
                for g, n in part.items():
                    counts[g] += n
        return counts

    # --- 暴力核对 ---
    def brute_force_genus(self, g: int) -> List[NumericalSemigroup]:
        """在 [1, 2g−1] 的所有 g 元子集中筛选出间隙集合"""
        if g > cfg.BRUTE_FORCE_MAX_GENUS:
            raise SemigroupError(f"Brute force limited to g <= {cfg.BRUTE_FORCE_MAX_GENUS}")
        found = []
        for gaps in itertools.combinations(range(1, 2 * g), g):
            try:
                found.append(numset_service.from_gaps(gaps))
            except SemigroupError:
                continue
        return found


# 全局实例
tree_service = TreeService()
