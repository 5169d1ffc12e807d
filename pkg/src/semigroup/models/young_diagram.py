# -*- coding: utf-8 -*-

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Tuple


class Step(str, Enum):
    """Dyck 路径的步：间隙向上，成员向右"""

    UP = "U"
    RIGHT = "R"


@dataclass(frozen=True)
class YoungDiagram:
    """
    英式约定的 Young 图，最长的行在最上方。

    row_lengths 的长度等于网格行数（即集合的间隙数），允许出现零行。
    """

    row_lengths: Tuple[int, ...]
    grid: Tuple[int, int]

    def __post_init__(self):
        rows = tuple(self.row_lengths)
        object.__setattr__(self, "row_lengths", rows)
        if any(b > a for a, b in zip(rows, rows[1:])):
            raise ValueError(f"Row lengths must be weakly decreasing: {rows}")
        if rows and (rows[-1] < 0 or rows[0] > self.grid[1]):
            raise ValueError(f"Rows {rows} do not fit the {self.grid[0]}x{self.grid[1]} grid")

    @property
    def boxes(self) -> int:
        return sum(self.row_lengths)

    @property
    def partition(self) -> Tuple[int, ...]:
        """去掉零行后的分拆"""
        return tuple(r for r in self.row_lengths if r > 0)

    @property
    def top_row(self) -> int:
        return self.row_lengths[0] if self.row_lengths else 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "row_lengths": list(self.row_lengths),
            "partition": list(self.partition),
            "grid": list(self.grid),
            "boxes": self.boxes,
        }
