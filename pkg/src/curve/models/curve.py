# -*- coding: utf-8 -*-

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from src.curve.models.series import Poly, format_fraction, poly_gcd
from src.curve.models.triangular_basis import TriangularBasis
from src.semigroup.models.numerical_semigroup import NumericalSemigroup


class CurveError(ValueError):
    """参数化或曲线上的构造不满足前提条件时抛出"""

    pass


class TruncationError(CurveError):
    """局部代数在最大截断阶内无法稳定时抛出"""

    pass


@dataclass(frozen=True)
class CurveParametrization:
    """
    有理曲线 t ↦ (f₀(t) : … : fₙ(t))，在 t = 0 处有唯一的单分支奇点 P。

    polys 保存输入的坐标；局部计算使用 normalized() 之后的坐标。
    conductor 非空时表示局部环额外包含 t^c·Ō（用 "ℂ ⊕ … ⊕ t^c Ō" 描述的局部环）。
    """

    polys: Tuple[Poly, ...]
    conductor: Optional[int] = None
    name: str = ""
    normalized_form: bool = field(default=False, compare=False)

    def __post_init__(self):
        polys = tuple(self.polys)
        object.__setattr__(self, "polys", polys)
        if len(polys) < 2:
            raise CurveError("A parametrization needs at least two coordinates")
        if all(p.is_zero for p in polys):
            raise CurveError("All coordinates are zero")
        if poly_gcd(polys).degree > 0:
            raise CurveError(f"Coordinates share the factor {poly_gcd(polys)}")
        if self.conductor is not None and self.conductor < 0:
            raise CurveError(f"Negative conductor {self.conductor}")

    @classmethod
    def of(cls, *polys, conductor: Optional[int] = None, name: str = "") -> "CurveParametrization":
        """接受 Poly 或 "1-2*t+t^4" 形式的字符串"""
        parsed = tuple(p if isinstance(p, Poly) else Poly.parse(p) for p in polys)
        return cls(parsed, conductor=conductor, name=name)

    @property
    def n(self) -> int:
        """射影空间维数"""
        return len(self.polys) - 1

    @property
    def max_degree(self) -> int:
        return max(p.degree for p in self.polys)

    def normalized(self) -> "CurveParametrization":
        """
        把 t = 0 处不为零的坐标换到 f₀，缩放使 f₀(0) = 1，再令 fᵢ ← fᵢ − fᵢ(0)·f₀。

        这是射影线性变换，不改变曲线与局部环。
        """
        if self.normalized_form:
            return self
        polys = list(self.polys)
        lead = next(i for i, p in enumerate(polys) if p.coefficient(0))
        polys[0], polys[lead] = polys[lead], polys[0]
        a = polys[0].coefficient(0)
        f0 = polys[0].scale(1 / a)
        rest = [p.scale(1 / a) for p in polys[1:]]
        rest = [p - f0.scale(p.coefficient(0)) for p in rest]
        for p in rest:
            if p.valuation == 1:
                raise CurveError("t = 0 is a smooth point of this parametrization")
        return CurveParametrization((f0, *rest), self.conductor, self.name, normalized_form=True)

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"f": [p.to_json() for p in self.polys]}
        if self.conductor is not None:
            data["conductor"] = self.conductor
        if self.name:
            data["name"] = self.name
        return data

    def __str__(self) -> str:
        return "(" + ", ".join(str(p) for p in self.polys) + ")"


@dataclass
class LocalAlgebra:
    """
    O_P 在 t 进展开下的三角形基。

    basis 截断到导子 c（[c, ∞) 由导子理想自动包含），
    order 是确认稳定时使用的截断阶 N。
    """

    basis: TriangularBasis
    order: int
    semigroup: NumericalSemigroup
    rounds: int = 1

    @property
    def genus(self) -> int:
        return self.semigroup.genus

    @property
    def conductor(self) -> int:
        return self.semigroup.conductor

    @property
    def multiplicity(self) -> int:
        return self.semigroup.multiplicity

    @property
    def values(self) -> Tuple[int, ...]:
        return self.basis.values

    def to_dict(self) -> Dict[str, Any]:
        return {
            "semigroup": self.semigroup.to_dict(),
            "order": self.order,
            "rounds": self.rounds,
        }


class BasePointStatus(str, Enum):
    NONE = "none"
    REMOVABLE = "removable"
    NON_REMOVABLE = "non-removable"


@dataclass
class Pencil:
    """
    O_C⟨1, f/h⟩ 生成的铅笔及其次数。

    stalk_values 是 v(A_P) 在导子以下的部分，extra_values 是 v(A_P)∖S。
    """

    f: Poly
    h: Poly
    degree: int
    status: BasePointStatus
    stalk_values: Tuple[int, ...]
    extra_values: Tuple[int, ...]
    source: str = ""
    formula_degree: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "f": str(self.f),
            "h": str(self.h),
            "degree": self.degree,
            "base_point_status": self.status.value,
            "stalk_values": list(self.stalk_values),
            "extra_values": list(self.extra_values),
        }
        if self.source:
            data["source"] = self.source
        if self.formula_degree is not None:
            data["formula_degree"] = self.formula_degree
        return data


class Answer(str, Enum):
    YES = "yes"
    NO = "no"
    UNDETERMINED = "undetermined"


@dataclass
class Verdict:
    """三值判定；YES 时 witness 为满足条件的 h"""

    answer: Answer
    witness: Optional[Poly] = None
    detail: str = ""
    equations: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "answer": self.answer.value,
            "witness": str(self.witness) if self.witness is not None else None,
            "detail": self.detail,
            "equations": self.equations,
        }


@dataclass
class GonalityBounds:
    lower: int
    upper: int
    witnesses: List[Pencil] = field(default_factory=list)
    lower_reason: str = ""
    certified: bool = False
    candidates_tried: int = 0
    exhausted: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "certified": self.certified,
            "lower_reason": self.lower_reason,
            "candidates_tried": self.candidates_tried,
            "exhausted": self.exhausted,
            "witnesses": [w.to_dict() for w in self.witnesses],
        }


@dataclass(frozen=True)
class ScrollLayout:
    """
    卷轴 S_{m₁…m_r} 的 2×(n+1−r) 矩阵排布。

    第 i 块占用 index_order 中连续的 mᵢ+1 个坐标下标 x_k … x_{k+mᵢ}，
    贡献 mᵢ 列 (x_k, x_{k+1})，…，(x_{k+mᵢ−1}, x_{k+mᵢ})。
    """

    block_sizes: Tuple[int, ...]
    index_order: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "block_sizes", tuple(self.block_sizes))
        object.__setattr__(self, "index_order", tuple(self.index_order))
        if any(m < 0 for m in self.block_sizes):
            raise CurveError(f"Negative block size in {self.block_sizes}")
        if sum(m + 1 for m in self.block_sizes) != len(self.index_order):
            raise CurveError(
                f"Blocks {self.block_sizes} need {sum(m + 1 for m in self.block_sizes)} indices, "
                f"got {len(self.index_order)}"
            )
        if sorted(self.index_order) != list(range(len(self.index_order))):
            raise CurveError(f"index_order must be a permutation of 0..n: {self.index_order}")

    @property
    def name(self) -> str:
        return "S_{" + ",".join(str(m) for m in self.block_sizes) + "}"

    def matrix(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """两行坐标下标"""
        top: List[int] = []
        bottom: List[int] = []
        pos = 0
        for m in self.block_sizes:
            block = self.index_order[pos: pos + m + 1]
            top.extend(block[:-1])
            bottom.extend(block[1:])
            pos += m + 1
        return tuple(top), tuple(bottom)

    def to_dict(self) -> Dict[str, Any]:
        top, bottom = self.matrix()
        return {"name": self.name, "block_sizes": list(self.block_sizes), "matrix": [list(top), list(bottom)]}


@dataclass
class ScrollReport:
    """
    乘法映射矩阵 [φ; x₁φ]，φ 取遍 H⁰(H−D) 的基 {1} ∪ U/f₀。

    矩阵元素是有理函数 (分子, 分母)；linear_forms 在所有元素都落在
    坐标张成空间时给出对应的坐标线性型，否则为 None。
    minors_vanish 是把坐标代入这些线性型后 2×2 子式的检查结果，linear_forms 为 None 时同为 None。
    """

    codimension: int
    u_basis: List[Poly]
    matrix: List[List[Tuple[Poly, Poly]]]
    linear_forms: Optional[List[List[List[Fraction]]]]
    divisor_h: Dict[str, int]
    divisor_d: Dict[str, int]
    minors_vanish: Optional[bool]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "codimension": self.codimension,
            "U": [str(u) for u in self.u_basis],
            "matrix": [[{"num": str(n), "den": str(d)} for n, d in row] for row in self.matrix],
            "in_coordinates": self.linear_forms is not None,
            "linear_forms": (
                [[[format_fraction(c) for c in form] for form in row] for row in self.linear_forms]
                if self.linear_forms is not None else None
            ),
            "H": self.divisor_h,
            "D": self.divisor_d,
            "minors_vanish": self.minors_vanish,
        }


@dataclass
class LinearSeriesReport:
    """由 ⟨1, x, y, x²⟩ 生成的线性系（x = u², y = u³ 时即 ⟨1, u², u³, u⁴⟩）"""

    sections: List[Poly]
    dimension: int
    degree: int
    base_point_free: bool
    map_degree: int
    cover_degree: Optional[int]
    verdict: str
    double_cover: Optional[Verdict] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "sections": [str(p) for p in self.sections],
            "dimension": self.dimension,
            "degree": self.degree,
            "base_point_free": self.base_point_free,
            "map_degree": self.map_degree,
            "cover_degree": self.cover_degree,
            "verdict": self.verdict,
            "double_cover": self.double_cover.to_dict() if self.double_cover else None,
        }
