# -*- coding: utf-8 -*-

import logging
from typing import Dict, List, Optional, Tuple

from src.curve.config import curve_config as cfg
from src.curve.models.curve import CurveError, CurveParametrization, LocalAlgebra, TruncationError
from src.curve.models.series import Poly, SeriesError, TruncatedSeries, expand
from src.curve.models.triangular_basis import TriangularBasis
from src.semigroup.models.numerical_semigroup import CofiniteSet, NumericalSemigroup
from src.semigroup.services.numset_service import numset_service

log = logging.getLogger(__name__)


class LocalAlgebraService:
    """
    计算奇点 P 处局部环 O_P 的三角形基与值半群。

    同一条曲线的结果会被缓存，曲线对象本身不可变。
    """

    def __init__(self):
        self._cache: Dict[CurveParametrization, LocalAlgebra] = {}

    def _closure(self, curve: CurveParametrization, order: int) -> TriangularBasis:
        """由 1 与 xᵢ = fᵢ/f₀ 生成的子代数在 t^order 以下的三角形基"""
        f0 = curve.polys[0]
        xs = [expand(p, f0, order) for p in curve.polys[1:] if not p.is_zero]
        xs = [x for x in xs if not x.is_zero()]
        if not xs:
            raise CurveError("constant map: every coordinate is a multiple of f0")
        x_vals = [x.valuation() for x in xs]
        basis = TriangularBasis(order)
        basis.insert(TruncatedSeries.one(order))
        if curve.conductor is not None:
            for j in range(curve.conductor, order):
                basis.insert(TruncatedSeries.monomial(j, order))
        queue: List[TruncatedSeries] = [basis.rows[0]]
        while queue:
            e = queue.pop()
            v = e.valuation()
            for x, xv in zip(xs, x_vals):
                if v + xv >= order:
                    continue
                row = basis.insert(e * x)
                if row is not None:
                    queue.append(row)
        return basis

    def _certify(self, values: Tuple[int, ...], order: int) -> Optional[NumericalSemigroup]:
        """
        截断阶以下的值集是精确的；当 [c*, N) 全在值集中且长度不小于重数时，
        加上重数即可覆盖其后的全部整数。
        """
        present = set(values)
        c_star = order
        while c_star > 0 and (c_star - 1) in present:
            c_star -= 1
        positive = [v for v in values if v > 0]
        if not positive:
            return None
        m = positive[0]
        if c_star > order // 2 or m > order // 2 or order - c_star < m:
            return None
        semigroup = NumericalSemigroup.from_members([v for v in values if v < c_star], c_star)
        if not numset_service.is_semigroup(semigroup):
            # 值集必然加法封闭，出现这种情况说明截断计算有误
            raise CurveError(f"Value set {semigroup.describe()} is not additively closed")
        return semigroup

    def local_algebra(self, curve: CurveParametrization, order: Optional[int] = None) -> LocalAlgebra:
        """
        Args:
            curve: 曲线参数化（内部会先归一化）。
            order: 初始截断阶，默认 4·max deg + 8；不稳定时翻倍直到 MAX_ORDER。
        """
        curve = curve.normalized()
        if order is None and curve in self._cache:
            return self._cache[curve]
        n = order or cfg.ORDER_FACTOR * curve.max_degree + cfg.ORDER_PADDING
        if curve.conductor is not None:
            n = max(n, 2 * curve.conductor + 2)
        rounds = 0
        while n <= cfg.MAX_ORDER:
            rounds += 1
            basis = self._closure(curve, n)
            semigroup = self._certify(basis.values, n)
            log.debug(f"截断阶 N={n}：值集 {len(basis)} 个，稳定={semigroup is not None}")
            if semigroup is not None:
                algebra = LocalAlgebra(basis.truncated(semigroup.conductor), n, semigroup, rounds)
                if order is None:
                    self._cache[curve] = algebra
                return algebra
            n *= 2
        raise TruncationError(f"truncation insufficient: no stable value semigroup below N={cfg.MAX_ORDER}")

    # --- 由局部代数读出的不变量 ---
    def semigroup(self, curve: CurveParametrization) -> NumericalSemigroup:
        return self.local_algebra(curve).semigroup

    def genus(self, curve: CurveParametrization) -> int:
        return self.local_algebra(curve).genus

    def multiplicity(self, curve: CurveParametrization) -> int:
        return self.local_algebra(curve).multiplicity

    def k_set_of_curve(self, curve: CurveParametrization) -> CofiniteSet:
        return numset_service.k_set(self.semigroup(curve))

    def pole_orders_of_differentials(self, curve: CurveParametrization) -> List[int]:
        """
        对偶化模在 P 处的 g 个极点阶 {c − a : a ∈ K, 0 ≤ a < c}，升序。

        例如 ⟨3,13,14⟩ 给出 dt/t², dt/t³, dt/t⁵, … 的阶 2, 3, 5, 6, 8, 9, 11, 12。
        """
        s = self.semigroup(curve)
        k = numset_service.k_set(s)
        c = s.conductor
        return sorted(c - a for a in range(c) if a in k)

    def differential_weight(self, curve: CurveParametrization) -> int:
        """Σ_{i=1}^{g−1} (kᵢ − i)，kᵢ 为去掉最大值后的升序极点阶"""
        orders = self.pole_orders_of_differentials(curve)
        return sum(k - i for i, k in enumerate(orders[:-1], start=1))

    # --- 成员判定 ---
    def membership(self, curve: CurveParametrization, f: Poly, h: Poly) -> bool:
        """
        判断 f/h ∈ O_P：把 f/h 展开到 t^c 后对三角形基做首项约化。

        t^c·Ō ⊆ O_P，因此只需看导子以下的部分。
        """
        if h.is_zero:
            raise CurveError("Denominator is the zero polynomial")
        if not h.coefficient(0):
            if f.coefficient(0):
                return False
            raise CurveError("f and h both vanish at t=0; divide out their common factor first")
        algebra = self.local_algebra(curve)
        c = algebra.conductor
        if c == 0:
            return True
        try:
            s = expand(f, h, c)
        except SeriesError as e:
            raise CurveError(str(e)) from e
        return algebra.basis.contains(s)


# 全局实例
local_algebra_service = LocalAlgebraService()
