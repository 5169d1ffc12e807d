# -*- coding: utf-8 -*-

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from src.curve.models.series import TruncatedSeries


class TriangularBasis:
    """
    按首项赋值排成三角形的幂级数基，所有向量截断到同一阶 order。

    每个基向量在自己的赋值处首一；两个基向量的赋值互不相同。
    """

    def __init__(self, order: int):
        self.order = order
        self.rows: Dict[int, TruncatedSeries] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def __contains__(self, valuation: int) -> bool:
        return valuation in self.rows

    @property
    def values(self) -> Tuple[int, ...]:
        return tuple(sorted(self.rows))

    def reduce(self, s: TruncatedSeries) -> TruncatedSeries:
        """首项约化：反复消去落在已有主元上的首项，直到首项不是主元或级数为零"""
        s = s.truncate(self.order)
        v = s.valuation()
        while v is not None and v in self.rows:
            s = s - self.rows[v].truncate(s.order) * s.coeffs[v]
            v = s.valuation()
        return s

    def insert(self, s: TruncatedSeries) -> Optional[TruncatedSeries]:
        """约化后若非零则作为新主元加入，返回加入的（首一）向量"""
        r = self.reduce(s)
        v = r.valuation()
        if v is None:
            return None
        row = r * (1 / r.coeffs[v])
        self.rows[v] = row
        return row

    def contains(self, s: TruncatedSeries) -> bool:
        return self.reduce(s).is_zero()

    def gap_coordinates(self, s: TruncatedSeries, positions: Iterable[int]) -> List[Fraction]:
        """
        完全约化（每个主元位置都消去）后在给定非主元位置上的系数。

        这是一个线性映射，s 属于张成空间当且仅当这些坐标全为零。
        """
        coeffs = list(s.truncate(self.order).coeffs)
        for v in sorted(self.rows):
            if v >= len(coeffs):
                break
            a = coeffs[v]
            if a:
                row = self.rows[v].coeffs
                for k in range(v, len(coeffs)):
                    if row[k]:
                        coeffs[k] -= a * row[k]
        return [coeffs[p] if p < len(coeffs) else Fraction(0) for p in positions]

    def truncated(self, order: int) -> "TriangularBasis":
        """截断到更低的阶；主元不小于 order 的向量在截断后为零，直接丢弃"""
        basis = TriangularBasis(order)
        for v, row in self.rows.items():
            if v < order:
                basis.rows[v] = row.truncate(order)
        return basis
