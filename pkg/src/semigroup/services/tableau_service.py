# -*- coding: utf-8 -*-

import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.semigroup.config import semigroup_config as cfg
from src.semigroup.models.numerical_semigroup import CofiniteSet, NumericalSemigroup, SemigroupError
from src.semigroup.models.young_diagram import Step, YoungDiagram
from src.semigroup.services.numset_service import numset_service

log = logging.getLogger(__name__)


def transpose(partition: Sequence[int]) -> Tuple[int, ...]:
    """共轭分拆：第 j 列的长度为长度 ≥ j 的行数"""
    rows = [r for r in partition if r > 0]
    if not rows:
        return ()
    return tuple(sum(1 for r in rows if r >= j) for j in range(1, max(rows) + 1))


class TableauService:
    """余有限集的 Dyck 路径与 Young 图表示。"""

    def dyck_path(self, t: CofiniteSet) -> Tuple[Step, ...]:
        """第 i 步（i = 1..max(2g, c)）在 i ∉ T 时向上，否则向右"""
        length = max(2 * t.genus, t.conductor)
        return tuple(Step.RIGHT if i in t else Step.UP for i in range(1, length + 1))

    def diagram(self, t: CofiniteSet, cols: Optional[int] = None) -> YoungDiagram:
        """
        每个间隙贡献一行，长度为它之前向右的步数；最大的间隙放在最上方。

        Args:
            t: 余有限集。
            cols: 网格列数，默认取 t 的间隙数；画 K 时传入 S 的亏格。
        """
        rows: List[int] = []
        passed = 0
        for step in self.dyck_path(t):
            if step is Step.RIGHT:
                passed += 1
            else:
                rows.append(passed)
        rows.reverse()
        width = t.genus if cols is None else cols
        return YoungDiagram(tuple(rows), (t.genus, max(width, rows[0] if rows else 0)))

    def weight_via_diagram(self, t: CofiniteSet) -> int:
        return self.diagram(t).boxes

    def t1_subdiagram(self, t: CofiniteSet, cols: Optional[int] = None) -> YoungDiagram:
        """去掉最上方一行（最大间隙的贡献）后剩下的子图"""
        full = self.diagram(t, cols)
        rows = full.row_lengths[1:]
        return YoungDiagram(rows, (len(rows), full.grid[1]))

    def verify_transpose(self, s: NumericalSemigroup) -> bool:
        """K 的 T₁ 是否恰为 S 的 T₁ 的转置"""
        k = numset_service.k_set(s)
        ours = self.t1_subdiagram(s).partition
        theirs = self.t1_subdiagram(k, cols=s.genus).partition
        return theirs == transpose(ours)

    def top_row_lengths(self, s: NumericalSemigroup) -> Tuple[int, int]:
        """返回 (c−1−g, g−1)，并核对它们就是 T_S 与 T_K 的最上一行"""
        g, c = s.genus, s.conductor
        if g < 1:
            raise SemigroupError("top_row_lengths needs g >= 1")
        expected = (c - 1 - g, g - 1)
        k = numset_service.k_set(s)
        actual = (self.diagram(s).top_row, self.diagram(k, cols=g).top_row)
        if actual != expected:
            raise SemigroupError(f"Top rows {actual} differ from (c-1-g, g-1) = {expected}")
        return expected

    def t1_columns(self, s: NumericalSemigroup) -> Tuple[int, ...]:
        """T₁ 的列长，用于观察 κ-超椭圆半群的阶梯形状"""
        return transpose(self.t1_subdiagram(s).partition)

    def render(self, t: CofiniteSet, cols: Optional[int] = None) -> str:
        """文本图：最上一行用空心方块，T₁ 用实心方块，空位用点"""
        d = self.diagram(t, cols)
        width = d.grid[1]
        lines = []
        for i, r in enumerate(d.row_lengths):
            box = cfg.BOX_TOP if i == 0 else cfg.BOX_T1
            lines.append(box * r + "·" * (width - r))
        return "\n".join(lines)

    def render_pair(self, s: NumericalSemigroup) -> Dict[str, Any]:
        """S 与 K 的图并排输出，供 tableau render 使用"""
        k = numset_service.k_set(s)
        d_s = self.diagram(s)
        d_k = self.diagram(k, cols=s.genus)
        return {
            "semigroup": s.describe(),
            "S": {**d_s.to_dict(), "t1": list(self.t1_subdiagram(s).partition), "text": self.render(s)},
            "K": {
                **d_k.to_dict(),
                "t1": list(self.t1_subdiagram(k, cols=s.genus).partition),
                "text": self.render(k, cols=s.genus),
            },
            "transpose_ok": self.verify_transpose(s),
        }


# 全局实例
tableau_service = TableauService()
