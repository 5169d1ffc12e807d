# -*- coding: utf-8 -*-

import csv
import io
import json
import logging
import os
from fractions import Fraction
from typing import Any, List, Optional, Sequence

from src import config

log = logging.getLogger(__name__)


def _default(value: Any) -> Any:
    """Fraction 以 "p/q" 输出，枚举取值，其余带 to_dict 的对象展开"""
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else value.numerator
    if hasattr(value, "to_dict"):
        return value.to_dict()
    if hasattr(value, "value"):
        return value.value
    if isinstance(value, (set, frozenset, tuple)):
        return list(value)
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def to_json(payload: Any) -> str:
    """稳定的 JSON 文本：键顺序保持插入顺序，不转义中文"""
    return json.dumps(payload, ensure_ascii=False, indent=2, default=_default) + "\n"


def to_csv(header: Sequence[str], rows: Sequence[Sequence[Any]], kind: str) -> str:
    """
    CSV 文本，第一行为带版本号的注释：# semicurve csv v{N} {kind}。

    Args:
        header: 列名。
        rows: 每行的单元格。
        kind: 报告类型（例如 "tree-count"、"lemma-k"）。
    """
    buffer = io.StringIO()
    buffer.write(f"# semicurve csv v{config.CSV_SCHEMA_VERSION} {kind}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(list(header))
    for row in rows:
        writer.writerow(["" if cell is None else cell for cell in row])
    return buffer.getvalue()


def mapping_rows(payload: dict) -> List[List[str]]:
    """把字典摊平成 key,value 两列，嵌套值写成紧凑 JSON"""
    rows = []
    for key, value in payload.items():
        if isinstance(value, (dict, list)):
            cell = json.dumps(value, ensure_ascii=False, separators=(",", ":"), default=_default)
        elif isinstance(value, bool):
            cell = "true" if value else "false"
        else:
            cell = "" if value is None else str(value)
        rows.append([key, cell])
    return rows


def emit(text: str, out: Optional[str] = None) -> None:
    """写到 --out 指定的文件，未指定时写到标准输出"""
    if not out:
        print(text, end="")
        return
    directory = os.path.dirname(os.path.abspath(out))
    if not os.path.exists(directory):
        os.makedirs(directory)
    with open(out, "w", encoding="utf-8", newline="") as f:
        f.write(text)
    log.info(f"报告已写入 {out}")
