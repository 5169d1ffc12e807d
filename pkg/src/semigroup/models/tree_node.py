# -*- coding: utf-8 -*-

from dataclasses import dataclass
from typing import List, Tuple

from src.semigroup.models.numerical_semigroup import NumericalSemigroup


@dataclass(frozen=True)
class TreeNode:
    """半群树中的一个节点，深度即亏格。"""

    semigroup: NumericalSemigroup
    depth: int


@dataclass
class FastNode:
    """
    枚举内部使用的紧凑节点。

    decomposition[i] 是满足 a ≤ b、a + b = i、a, b ∈ S 的有序对个数；
    i ∈ S 当且仅当该值大于 0，i 是极小生成元当且仅当该值等于 1。
    """

    decomposition: List[int]
    conductor: int
    multiplicity: int
    genus: int

    def to_semigroup(self) -> NumericalSemigroup:
        dec = self.decomposition
        return NumericalSemigroup(tuple(i for i in range(self.conductor) if dec[i] > 0), self.conductor)

    def to_tuple(self) -> Tuple[List[int], int, int, int]:
        return self.decomposition, self.conductor, self.multiplicity, self.genus
