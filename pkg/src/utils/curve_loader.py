# -*- coding: utf-8 -*-

import json
import logging
import os
from typing import Any, Dict, List, Mapping, Optional, Tuple

import yaml

try:
    import tomllib
except ImportError:  # Python < 3.11
    tomllib = None

from src.curve.models.curve import CurveError, CurveParametrization
from src.curve.models.series import Poly, SeriesError, to_fraction

log = logging.getLogger(__name__)

RationalFunction = Tuple[Poly, Poly]


class CurveFileError(ValueError):
    """曲线文件无法读取或不符合格式"""

    pass


class CurveFile:
    """一个曲线文件解析后的内容：曲线本身，以及可选的 g³₈ 构造参数。"""

    def __init__(self, curve: CurveParametrization,
                 u: Optional[RationalFunction] = None,
                 sections: Optional[Tuple[RationalFunction, RationalFunction]] = None,
                 path: str = ""):
        self.curve = curve
        self.u = u
        self.sections = sections
        self.path = path


def _read_mapping(path: str) -> Mapping[str, Any]:
    """按扩展名选择 JSON / TOML / YAML 解析器"""
    if not os.path.exists(path):
        raise CurveFileError(f"Curve file not found: {path}")
    ext = os.path.splitext(path)[1].lower()
    try:
        if ext == ".toml":
            if tomllib is None:
                raise CurveFileError("TOML curve files need Python 3.11 or newer")
            with open(path, "rb") as f:
                data = tomllib.load(f)
        elif ext in (".yaml", ".yml"):
            with open(path, "r", encoding="utf-8") as f:
                data = yaml.safe_load(f)
        else:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
    except json.JSONDecodeError as e:
        raise CurveFileError(f"{path}: invalid JSON at line {e.lineno}: {e.msg}") from e
    except yaml.YAMLError as e:
        raise CurveFileError(f"{path}: invalid YAML: {e}") from e
    except (OSError, UnicodeDecodeError) as e:
        raise CurveFileError(f"{path}: cannot read file: {e}") from e
    except ValueError as e:
        # tomllib.TOMLDecodeError 是 ValueError 的子类
        raise CurveFileError(f"{path}: invalid TOML: {e}") from e
    if not isinstance(data, Mapping):
        raise CurveFileError(f"{path}: top level must be a mapping")
    return data


def parse_poly(value: Any, where: str = "") -> Poly:
    """
    多项式可以写成升幂系数数组（整数或 "p/q"），也可以写成 "1-2*t+t^4" 形式的字符串。
    """
    try:
        if isinstance(value, str):
            return Poly.parse(value)
        if isinstance(value, (int, list)) and not isinstance(value, bool):
            coeffs = [value] if isinstance(value, int) else value
            return Poly(tuple(to_fraction(c) for c in coeffs))
    except SeriesError as e:
        raise CurveFileError(f"{where}: {e}") from e
    raise CurveFileError(f"{where}: expected a coefficient list or a polynomial string, got {value!r}")


def parse_rational_function(value: Any, where: str) -> RationalFunction:
    """[分子, 分母] 或单个多项式（分母为 1）"""
    if isinstance(value, list) and len(value) == 2 and all(isinstance(v, (str, list)) for v in value):
        num, den = parse_poly(value[0], f"{where}[0]"), parse_poly(value[1], f"{where}[1]")
    else:
        num, den = parse_poly(value, where), Poly.constant(1)
    if den.is_zero:
        raise CurveFileError(f"{where}: zero denominator")
    return num, den


def curve_from_mapping(data: Mapping[str, Any], where: str = "<input>") -> CurveFile:
    """
    解析曲线描述。

    Args:
        data: 包含 "f"（必需）、"conductor"、"name"、"u"、"sections" 的字典。
        where: 出错时用于定位的文件名。
    """
    if "f" not in data:
        raise CurveFileError(f"{where}: missing key 'f'")
    raw = data["f"]
    if not isinstance(raw, list) or len(raw) < 2:
        raise CurveFileError(f"{where}: 'f' must list at least two polynomials")
    polys: List[Poly] = [parse_poly(p, f"{where}: f[{i}]") for i, p in enumerate(raw)]

    conductor = data.get("conductor")
    if conductor is not None and (isinstance(conductor, bool) or not isinstance(conductor, int)):
        raise CurveFileError(f"{where}: 'conductor' must be an integer")
    name = data.get("name", "")
    if not isinstance(name, str):
        raise CurveFileError(f"{where}: 'name' must be a string")

    try:
        curve = CurveParametrization(tuple(polys), conductor=conductor, name=name)
    except CurveError as e:
        raise CurveFileError(f"{where}: {e}") from e

    u = parse_rational_function(data["u"], f"{where}: u") if data.get("u") is not None else None
    sections = None
    if data.get("sections") is not None:
        pair = data["sections"]
        if not isinstance(pair, list) or len(pair) != 2:
            raise CurveFileError(f"{where}: 'sections' must be [x, y]")
        sections = (
            parse_rational_function(pair[0], f"{where}: sections[0]"),
            parse_rational_function(pair[1], f"{where}: sections[1]"),
        )
    return CurveFile(curve, u=u, sections=sections, path=where)


def load_curve_file(path: str) -> CurveFile:
    """读取 JSON、TOML 或 YAML 格式的曲线文件"""
    data = _read_mapping(path)
    loaded = curve_from_mapping(data, where=path)
    log.debug(f"已读取曲线文件 {path}: {loaded.curve}")
    return loaded


def parse_pair(text: str) -> RationalFunction:
    """命令行 --u "f,h" 形式的参数，表示 u = f/h"""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2 or not all(parts):
        raise CurveFileError(f"Expected 'f,h', got {text!r}")
    num, den = parse_poly(parts[0], "--u"), parse_poly(parts[1], "--u")
    if den.is_zero:
        raise CurveFileError("--u: zero denominator")
    return num, den


def curve_summary(loaded: CurveFile) -> Dict[str, Any]:
    data = loaded.curve.to_dict()
    if loaded.u is not None:
        data["u"] = [p.to_json() for p in loaded.u]
    if loaded.sections is not None:
        data["sections"] = [[p.to_json() for p in rf] for rf in loaded.sections]
    return data
