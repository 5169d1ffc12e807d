# -*- coding: utf-8 -*-

import heapq
import logging
from functools import reduce
from math import comb, gcd
from typing import Any, Dict, Iterable, List, Mapping

from src.semigroup.models.numerical_semigroup import (
    CofiniteSet,
    NumericalSemigroup,
    SemigroupError,
    WeightReport,
)

log = logging.getLogger(__name__)


class NumsetService:
    """数值半群与余有限集的构造、权重计算与分类判定。"""

    # --- 构造 ---
    def apery_set(self, gens: Iterable[int], n: int) -> List[int]:
        """
        半群 ⟨gens⟩ 关于 n 的 Apéry 集：每个模 n 剩余类中的最小元。

        用最短路在剩余类上求解，边权为各生成元。
        """
        gens = sorted(set(gens))
        dist = [None] * n
        dist[0] = 0
        heap = [(0, 0)]
        while heap:
            d, r = heapq.heappop(heap)
            if d != dist[r]:
                continue
            for a in gens:
                nr = (r + a) % n
                nd = d + a
                if dist[nr] is None or nd < dist[nr]:
                    dist[nr] = nd
                    heapq.heappush(heap, (nd, nr))
        return dist

    def from_generators(self, gens: Iterable[int]) -> NumericalSemigroup:
        """由生成元（可冗余）构造最小的包含它们的半群"""
        gens = [int(a) for a in gens]
        if not gens:
            raise SemigroupError("At least one generator is required")
        if any(a <= 0 for a in gens):
            raise SemigroupError(f"Generators must be positive: {gens}")
        if reduce(gcd, gens) != 1:
            raise SemigroupError(f"infinite complement: gcd{tuple(gens)} != 1")
        m = min(gens)
        if m == 1:
            return NumericalSemigroup((), 0)
        apery = self.apery_set(gens, m)
        conductor = max(apery) - m + 1
        members = tuple(x for x in range(conductor) if x >= apery[x % m])
        return NumericalSemigroup(members, conductor)

    def from_gaps(self, gaps: Iterable[int]) -> NumericalSemigroup:
        """由间隙集构造；补集不加法封闭时抛出 SemigroupError"""
        gap_list = [int(x) for x in gaps]
        gap_set = set(gap_list)
        if len(gap_set) != len(gap_list) or any(x <= 0 for x in gap_set):
            raise SemigroupError(f"Gaps must be distinct positive integers: {gap_list}")
        conductor = max(gap_set) + 1 if gap_set else 0
        members = tuple(x for x in range(conductor) if x not in gap_set)
        for i, a in enumerate(members):
            for b in members[i:]:
                if a + b in gap_set:
                    raise SemigroupError(f"not a semigroup: {a} + {b} = {a + b} is a gap")
        return NumericalSemigroup(members, conductor)

    def as_semigroup(self, t: CofiniteSet) -> NumericalSemigroup:
        """检查加法封闭性后把余有限集提升为半群"""
        if isinstance(t, NumericalSemigroup):
            return t
        return self.from_gaps(t.gaps)

    def is_semigroup(self, t: CofiniteSet) -> bool:
        members = t.members_below_conductor
        return all(a + b in t for i, a in enumerate(members) for b in members[i:])

    def from_json(self, data: Mapping[str, Any]) -> NumericalSemigroup:
        if "generators" in data:
            return self.from_generators(data["generators"])
        if "gaps" in data:
            return self.from_gaps(data["gaps"])
        raise SemigroupError("Expected a 'generators' or 'gaps' key")

    def to_json(self, s: NumericalSemigroup) -> Dict[str, Any]:
        return {"generators": list(s.minimal_generators), "gaps": list(s.gaps)}

    # --- 权重 ---
    def weight(self, t: CofiniteSet) -> int:
        """W_T = Σℓᵢ − g(g+1)/2"""
        g = t.genus
        return sum(t.gaps) - g * (g + 1) // 2

    def weight_forward(self, t: CofiniteSet) -> int:
        """从 0 走向导子：每遇到一个间隙，加上已经走过的正成员个数"""
        passed = 0
        total = 0
        for n in range(1, t.conductor):
            if n in t:
                passed += 1
            else:
                total += passed
        return total

    def weight_backward(self, t: CofiniteSet) -> int:
        """从导子走回 0：每遇到一个正成员，加上已经走过的间隙个数"""
        passed = 0
        total = 0
        for n in range(t.conductor - 1, 0, -1):
            if n in t:
                total += passed
            else:
                passed += 1
        return total

    def k_set(self, s: NumericalSemigroup) -> CofiniteSet:
        """
        K = {a : c − a − 1 ∉ S}，只保留非负部分。

        负数 a 总满足 c − a − 1 ≥ c，落在 S 中，因此不会进入 K。
        """
        c = s.conductor
        return CofiniteSet.from_members((c - 1 - gap for gap in s.gaps), c)

    # --- 分类 ---
    def is_symmetric(self, s: CofiniteSet) -> bool:
        c = s.conductor
        return all((a in s) != ((c - 1 - a) in s) for a in range(c))

    def is_hyperelliptic(self, s: CofiniteSet) -> bool:
        return 2 in s

    def is_bielliptic(self, s: CofiniteSet) -> bool:
        """4 与 6 是 S 中最小的两个正整数"""
        return all(n not in s for n in (1, 2, 3, 5)) and 4 in s and 6 in s

    def is_kappa_hyperelliptic(self, s: CofiniteSet, kappa: int) -> bool:
        """(a) [2, 4κ] 中恰有 κ 个偶数属于 S；(b) 4κ + 2 ∈ S"""
        if kappa < 0:
            raise SemigroupError(f"kappa must be nonnegative, got {kappa}")
        evens = sum(1 for e in range(2, 4 * kappa + 1, 2) if e in s)
        return evens == kappa and (4 * kappa + 2) in s

    def detect_kappa(self, s: CofiniteSet) -> List[int]:
        """返回 [0, ⌊g/2⌋] 中全部满足条件的 κ（可能为空）"""
        return [k for k in range(s.genus // 2 + 1) if self.is_kappa_hyperelliptic(s, k)]

    def technical_hypothesis(self, s: NumericalSemigroup) -> bool:
        """S ∩ [1, 2g] 中的每个奇数成员都严格大于次大间隙 ℓ_{g−1}"""
        if not self.detect_kappa(s):
            raise SemigroupError(f"{s.describe()} is not kappa-hyperelliptic for any kappa")
        gaps = s.gaps
        second_largest = gaps[-2] if len(gaps) >= 2 else 0
        return all(
            n > second_largest for n in range(1, 2 * s.genus + 1, 2) if n in s
        )

    def even_pattern(self, s: CofiniteSet, kappa: int) -> List[int]:
        """[2, 4κ] 中属于 S 的偶数 P₁ < … < P_κ"""
        return [e for e in range(2, 4 * kappa + 1, 2) if e in s]

    # --- 特殊半群族 ---
    def hyperelliptic_semigroup(self, g: int) -> NumericalSemigroup:
        return self.from_generators([2, 2 * g + 1])

    def bielliptic_semigroups(self, g: int) -> List[NumericalSemigroup]:
        """
        亏格 g ≥ 5 的两个双椭圆半群：对称的 ⟨4,6,2g−3⟩（c = 2g）
        与非对称的 ⟨4,6,2g−1,2g+1⟩（c = 2g − 2）。
        """
        if g < 5:
            raise SemigroupError(f"Bielliptic semigroups need g >= 5, got {g}")
        return [
            self.from_generators([4, 6, 2 * g - 3]),
            self.from_generators([4, 6, 2 * g - 1, 2 * g + 1]),
        ]

    def s_zero(self, kappa: int, g: int) -> NumericalSemigroup:
        """S₀ = ⟨4, 4κ+2, 2g−4κ+1⟩"""
        return self.from_generators([4, 4 * kappa + 2, 2 * g - 4 * kappa + 1])

    # --- 报告 ---
    def weight_report(self, s: NumericalSemigroup) -> WeightReport:
        k = self.k_set(s)
        kappas = self.detect_kappa(s)
        return WeightReport(
            generators=list(s.minimal_generators),
            g=s.genus,
            c=s.conductor,
            W_S=self.weight(s),
            W_K=self.weight(k),
            g_prime=k.genus,
            symmetric=self.is_symmetric(s),
            hyperelliptic=self.is_hyperelliptic(s),
            bielliptic=self.is_bielliptic(s),
            kappa=kappas,
            tech_hyp=self.technical_hypothesis(s) if kappas else None,
        )

    def info(self, s: NumericalSemigroup) -> Dict[str, Any]:
        """命令行 semigroup info 的完整输出"""
        k = self.k_set(s)
        report = self.weight_report(s)
        data = s.to_dict()
        data.update(report.to_dict())
        data["weights"] = {
            "definition": report.W_S,
            "forward": self.weight_forward(s),
            "backward": self.weight_backward(s),
        }
        data["k_set"] = k.to_dict()
        data["k_weights"] = {
            "definition": report.W_K,
            "forward": self.weight_forward(k),
            "backward": self.weight_backward(k),
        }
        data["max_weight"] = comb(s.genus, 2)
        return data


# 全局实例
numset_service = NumsetService()
