# -*- coding: utf-8 -*-

"""
有理数系数的一元多项式与截断幂级数。

所有运算都是精确的：系数一律使用 Fraction，多项式的 gcd、因式分解等
较重的代数运算交给 sympy 在 QQ 上完成。
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)

T = sympy.Symbol("t")
_TRANSFORMATIONS = standard_transformations + (convert_xor, implicit_multiplication_application)

Scalar = Union[int, Fraction]


class SeriesError(ArithmeticError):
    """多项式或幂级数运算无法进行时抛出（例如对非单位求逆）"""

    pass


def to_fraction(value) -> Fraction:
    """把 int、"p/q" 字符串、Fraction 或 sympy 有理数统一转换为 Fraction。"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise SeriesError(f"Invalid coefficient: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError as e:
            raise SeriesError(f"Invalid rational literal: {value!r}") from e
    if isinstance(value, float):
        # 浮点输入会污染精确计算
        raise SeriesError(f"Float coefficient {value!r} rejected; use 'p/q' strings")
    rational = sympy.Rational(value)
    return Fraction(int(rational.p), int(rational.q))


def sympy_rational(value) -> sympy.Rational:
    """Fraction（或可转换为 Fraction 的值）转为 sympy 有理数"""
    q = to_fraction(value)
    return sympy.Rational(q.numerator, q.denominator)


def format_fraction(value: Fraction) -> str:
    """输出 "p/q" 形式（整数时只输出 p）"""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Poly:
    """
    QQ 上的一元多项式，系数按升幂排列。

    规范形式不含末尾的零系数，零多项式为空元组。
    """

    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        values = [to_fraction(c) for c in self.coeffs]
        while values and values[-1] == 0:
            values.pop()
        object.__setattr__(self, "coeffs", tuple(values))

    # --- 构造 ---
    @classmethod
    def from_coefficients(cls, values: Iterable) -> "Poly":
        return cls(tuple(values))

    @classmethod
    def constant(cls, value: Scalar) -> "Poly":
        return cls((value,))

    @classmethod
    def monomial(cls, degree: int, coefficient: Scalar = 1) -> "Poly":
        if degree < 0:
            raise SeriesError(f"Negative exponent {degree}")
        return cls((0,) * degree + (coefficient,))

    @classmethod
    def parse(cls, text: str) -> "Poly":
        """
        解析 "1-2*t+3*t^4" 之类的字符串。

        Args:
            text: 只含变量 t 的多项式表达式，允许 ^ 表示乘方和 p/q 形式的有理系数。
        """
        try:
            expr = parse_expr(text, local_dict={"t": T}, transformations=_TRANSFORMATIONS)
        except (SyntaxError, TypeError, sympy.SympifyError) as e:
            raise SeriesError(f"Cannot parse polynomial {text!r}: {e}") from e
        return cls.from_sympy(expr)

    @classmethod
    def from_sympy(cls, expr) -> "Poly":
        try:
            poly = expr if isinstance(expr, sympy.Poly) else sympy.Poly(expr, T, domain=sympy.QQ)
        except (sympy.PolynomialError, sympy.CoercionFailed) as e:
            raise SeriesError(f"Not a polynomial in t over QQ: {expr}") from e
        if poly.is_zero:
            return cls()
        return cls(tuple(to_fraction(c) for c in reversed(poly.all_coeffs())))

    def to_sympy(self) -> sympy.Poly:
        if not self.coeffs:
            return sympy.Poly(0, T, domain=sympy.QQ)
        return sympy.Poly(
            [sympy.Rational(c.numerator, c.denominator) for c in reversed(self.coeffs)],
            T,
            domain=sympy.QQ,
        )

    # --- 基本属性 ---
    @property
    def degree(self) -> int:
        """零多项式的次数记为 -1"""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def valuation(self) -> Optional[int]:
        """t = 0 处的消没阶；零多项式返回 None"""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    @property
    def leading_coefficient(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coefficient(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __call__(self, x: Scalar) -> Fraction:
        x = to_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # --- 环运算 ---
    def __add__(self, other: "Poly") -> "Poly":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(tuple(self.coefficient(i) + other.coefficient(i) for i in range(n)))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-_as_poly(other))

    def __rsub__(self, other: "Poly") -> "Poly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = _as_poly(other)
        if self.is_zero or other.is_zero:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return Poly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Poly":
        if exponent < 0:
            raise SeriesError("Negative power of a polynomial")
        result = Poly.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def scale(self, factor: Scalar) -> "Poly":
        factor = to_fraction(factor)
        return Poly(tuple(c * factor for c in self.coeffs))

    def compose_power(self, d: int) -> "Poly":
        """返回 p(t^d)"""
        if d < 1:
            raise SeriesError(f"compose_power needs d >= 1, got {d}")
        out = [Fraction(0)] * (d * self.degree + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[i * d] = c
        return Poly(tuple(out))

    def taylor_shift(self, center: Scalar) -> "Poly":
        """返回 p(t + center)，其系数即 p 在 center 处的 Taylor 系数"""
        shifted = self.to_sympy().compose(sympy.Poly(T + sympy.Rational(to_fraction(center)), T, domain=sympy.QQ))
        return Poly.from_sympy(shifted)

    def multiplicity_at(self, point: Scalar) -> int:
        """point 作为根的重数（非根时为 0）"""
        if self.is_zero:
            raise SeriesError("Zero polynomial has no finite root multiplicity")
        return self.taylor_shift(point).valuation or 0

    # --- 依赖 sympy 的代数运算 ---
    def gcd(self, other: "Poly") -> "Poly":
        """首一化的最大公因式"""
        g = Poly.from_sympy(self.to_sympy().gcd(_as_poly(other).to_sympy()))
        return g.monic() if not g.is_zero else g

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        return self.scale(1 / self.leading_coefficient)

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.to_sympy().div(_as_poly(other).to_sympy())
        if not r.is_zero:
            raise SeriesError(f"{other} does not divide {self}")
        return Poly.from_sympy(q)

    def rational_roots(self) -> Dict[Fraction, int]:
        """QQ 上的根及其重数"""
        roots: Dict[Fraction, int] = {}
        if self.degree < 1:
            return roots
        _, factors = self.to_sympy().factor_list()
        for factor, mult in factors:
            if factor.degree() == 1:
                a, b = factor.all_coeffs()
                root = to_fraction(-b / a)
                roots[root] = roots.get(root, 0) + mult
        return roots

    def splits_over_q(self) -> bool:
        return sum(self.rational_roots().values()) == max(self.degree, 0)

    def squarefree_parts(self) -> List[Tuple["Poly", int]]:
        """QQ 上的无平方因式分解"""
        _, parts = self.to_sympy().sqf_list()
        return [(Poly.from_sympy(p), k) for p, k in parts]

    # --- 序列化 ---
    def to_json(self) -> List[str]:
        return [format_fraction(c) for c in self.coeffs]

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            coeff = format_fraction(c)
            if i == 0:
                terms.append(coeff)
            else:
                mono = "t" if i == 1 else f"t^{i}"
                terms.append(mono if c == 1 else f"{coeff}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


def _as_poly(value) -> Poly:
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly.constant(value)
    raise TypeError(f"Cannot use {type(value).__name__} as a polynomial")


def poly_gcd(polys: Sequence[Poly]) -> Poly:
    """多个多项式的首一 gcd"""
    g = Poly()
    for p in polys:
        g = p.monic() if g.is_zero else g.gcd(p)
    return g


@dataclass(frozen=True)
class TruncatedSeries:
    """
    截断到 t^order 的幂级数 a_0 + a_1 t + ... + a_{order-1} t^{order-1}。

    两个级数运算的结果取较小的截断阶。
    """

    coeffs: Tuple[Fraction, ...]
    order: int

    def __post_init__(self):
        if self.order < 0:
            raise SeriesError(f"Negative truncation order {self.order}")
        values = [to_fraction(c) for c in self.coeffs[: self.order]]
        values.extend([Fraction(0)] * (self.order - len(values)))
        object.__setattr__(self, "coeffs", tuple(values))

    # --- 构造 ---
    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls((), order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls((1,), order)

    @classmethod
    def monomial(cls, k: int, order: int, coefficient: Scalar = 1) -> "TruncatedSeries":
        if k >= order:
            return cls.zero(order)
        return cls((0,) * k + (coefficient,), order)

    @classmethod
    def from_poly(cls, p: Poly, order: int) -> "TruncatedSeries":
        return cls(p.coeffs, order)

    # --- 属性 ---
    def valuation(self) -> Optional[int]:
        """
        首个非零系数的下标。

        截断阶以下全为零时返回 None，表示“至少为 order”。
        """
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def is_zero(self) -> bool:
        return self.valuation() is None

    def leading_coefficient(self) -> Fraction:
        v = self.valuation()
        return self.coeffs[v] if v is not None else Fraction(0)

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs, min(order, self.order))

    def to_poly(self) -> Poly:
        return Poly(self.coeffs)

    # --- 环运算 ---
    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(tuple(self.coeffs[i] + other.coeffs[i] for i in range(n)), n)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(tuple(-c for c in self.coeffs), self.order)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries(tuple(self.coeffs[i] - other.coeffs[i] for i in range(n)), n)

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        n = min(self.order, other.order)
        out = [Fraction(0)] * n
        for i in range(n):
            a = self.coeffs[i]
            if not a:
                continue
            for j in range(n - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return TruncatedSeries(tuple(out), n)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "TruncatedSeries":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = TruncatedSeries.one(self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def scale(self, factor: Scalar) -> "TruncatedSeries":
        factor = to_fraction(factor)
        return TruncatedSeries(tuple(c * factor for c in self.coeffs), self.order)

    def shift(self, k: int) -> "TruncatedSeries":
        """乘以 t^k，截断阶不变"""
        return TruncatedSeries((0,) * k + self.coeffs, self.order)

    def inverse(self) -> "TruncatedSeries":
        """单位的逆；常数项为零时抛出 SeriesError"""
        if self.order == 0:
            return self
        a0 = self.coeffs[0]
        if not a0:
            raise SeriesError("not a unit at t=0")
        inv = [Fraction(0)] * self.order
        inv[0] = 1 / a0
        for n in range(1, self.order):
            acc = Fraction(0)
            for k in range(1, n + 1):
                if self.coeffs[k]:
                    acc += self.coeffs[k] * inv[n - k]
            inv[n] = -acc * inv[0]
        return TruncatedSeries(tuple(inv), self.order)

    def __str__(self) -> str:
        body = str(Poly(self.coeffs))
        return f"{body} + O(t^{self.order})"


def expand(f: Poly, h: Poly, order: int) -> TruncatedSeries:
    """
    f/h 在 t = 0 处展开到 t^order。

    Args:
        f: 分子。
        h: 分母，要求 h(0) != 0。
        order: 截断阶。
    """
    if not h.coefficient(0):
        raise SeriesError("not a unit at t=0")
    return TruncatedSeries.from_poly(f, order) * TruncatedSeries.from_poly(h, order).inverse()


def valuation(s: TruncatedSeries) -> Optional[int]:
    return s.valuation()
