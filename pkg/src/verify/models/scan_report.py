# -*- coding: utf-8 -*-

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

# 每份报告最多列出的违例条数，计数不受影响
MAX_LISTED_VIOLATIONS = 50


@dataclass
class ScanReport:
    """
    一次穷举核对的结果。

    result 部分只依赖输入，与线程数无关；runtime 部分（耗时、峰值内存、线程数）单独存放。
    """

    statement: str
    genus_range: Tuple[int, int]
    params: Dict[str, Any] = field(default_factory=dict)
    checked: int = 0
    satisfied: int = 0
    violated: int = 0
    violations: List[Dict[str, Any]] = field(default_factory=list)
    achievers: List[Dict[str, Any]] = field(default_factory=list)
    table: List[Dict[str, Any]] = field(default_factory=list)
    threshold: Optional[int] = None
    notes: List[str] = field(default_factory=list)
    duration_s: float = 0.0
    peak_rss_mb: float = 0.0
    threads: int = 1

    def record(self, ok: bool, violation: Optional[Dict[str, Any]] = None) -> None:
        self.checked += 1
        if ok:
            self.satisfied += 1
            return
        self.violated += 1
        if violation is not None and len(self.violations) < MAX_LISTED_VIOLATIONS:
            self.violations.append(violation)

    @property
    def ok(self) -> bool:
        return self.violated == 0

    def to_dict(self, include_runtime: bool = True) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "statement": self.statement,
            "genus_range": list(self.genus_range),
            "params": self.params,
            "checked": self.checked,
            "satisfied": self.satisfied,
            "violated": self.violated,
            "violations": self.violations,
            "achievers": self.achievers,
            "table": self.table,
            "threshold": self.threshold,
            "notes": self.notes,
        }
        if include_runtime:
            data["runtime"] = {
                "duration_s": round(self.duration_s, 3),
                "peak_rss_mb": round(self.peak_rss_mb, 1),
                "threads": self.threads,
            }
        return data

    SUMMARY_COLUMNS = ("statement", "g_min", "g_max", "checked", "satisfied", "violated", "threshold")

    def csv_rows(self) -> Tuple[List[str], List[List[str]]]:
        """有 table 时逐行输出 table，否则输出一行汇总"""
        if self.table:
            header: List[str] = []
            for row in self.table:
                for key in row:
                    if key not in header:
                        header.append(key)
            rows = [[_cell(row.get(key)) for key in header] for row in self.table]
            return header, rows
        summary = [
            self.statement, str(self.genus_range[0]), str(self.genus_range[1]),
            str(self.checked), str(self.satisfied), str(self.violated), _cell(self.threshold),
        ]
        return list(self.SUMMARY_COLUMNS), [summary]


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return " ".join(str(v) for v in value)
    return str(value)
