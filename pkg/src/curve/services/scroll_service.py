# -*- coding: utf-8 -*-

import itertools
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from src.curve.models.curve import CurveError, CurveParametrization, ScrollLayout, ScrollReport
from src.curve.models.series import Poly, format_fraction, sympy_rational, to_fraction
from src.semigroup.models.numerical_semigroup import NumericalSemigroup
from src.semigroup.services.numset_service import numset_service

log = logging.getLogger(__name__)

RationalFunction = Tuple[Poly, Poly]


def _minors_vanish(top: Sequence[RationalFunction], bottom: Sequence[RationalFunction]) -> bool:
    """2×k 有理函数矩阵的全部 2×2 子式是否恒为零"""
    for a, b in itertools.combinations(range(len(top)), 2):
        (na, da), (nb, db) = top[a], top[b]
        (ma, ea), (mb, eb) = bottom[a], bottom[b]
        if not (na * mb * db * ea - nb * ma * da * eb).is_zero:
            return False
    return True


def _span_coordinates(target: Poly, basis: Sequence[Poly]) -> Optional[List[Fraction]]:
    """target 在 basis 张成空间中的坐标；不在其中时返回 None"""
    width = max([target.degree] + [p.degree for p in basis]) + 1
    if width <= 0:
        return [Fraction(0)] * len(basis)
    matrix = sympy.Matrix(width, len(basis), lambda i, j: sympy_rational(basis[j].coefficient(i)))
    rhs = sympy.Matrix(width, 1, lambda i, _: sympy_rational(target.coefficient(i)))
    try:
        solution, params = matrix.gauss_jordan_solve(rhs)
    except ValueError:
        return None
    if params.shape[0]:
        solution = solution.subs({p: 0 for p in params})
    return [to_fraction(x) for x in solution]


def _divmod(num: Poly, den: Poly) -> Tuple[Poly, Poly]:
    q, r = num.to_sympy().div(den.to_sympy())
    return Poly.from_sympy(q), Poly.from_sympy(r)


class ScrollService:
    """卷轴相关的构造与验证：包含性检查、余维数以及单项式嵌入。"""

    def verify_scroll_containment(self, curve: CurveParametrization, layout: ScrollLayout) -> bool:
        """把坐标代入排布矩阵后，所有 2×2 子式是否恒为零"""
        if len(layout.index_order) != len(curve.polys):
            raise CurveError(
                f"Layout {layout.name} uses {len(layout.index_order)} coordinates, curve has {len(curve.polys)}"
            )
        top, bottom = layout.matrix()
        one = Poly.constant(1)
        return _minors_vanish(
            [(curve.polys[i], one) for i in top],
            [(curve.polys[i], one) for i in bottom],
        )

    def verify_linear_forms(self, curve: CurveParametrization, forms: Sequence[Sequence[Sequence[Fraction]]]) -> bool:
        """
        把归一化坐标代入 2×k 的线性型矩阵，检查全部 2×2 子式是否恒为零。

        Args:
            curve: 曲线（按归一化后的坐标顺序解释线性型）。
            forms: 两行线性型，每个线性型是各坐标的系数。
        """
        polys = curve.normalized().polys
        if len(forms) != 2 or len(forms[0]) != len(forms[1]):
            raise CurveError("Linear forms must form a 2 x k matrix")
        one = Poly.constant(1)
        rows: List[List[RationalFunction]] = []
        for row in forms:
            entries = []
            for form in row:
                if len(form) != len(polys):
                    raise CurveError(f"Linear form {list(form)} does not match {len(polys)} coordinates")
                value = Poly()
                for coeff, p in zip(form, polys):
                    value = value + p.scale(to_fraction(coeff))
                entries.append((value, one))
            rows.append(entries)
        return _minors_vanish(rows[0], rows[1])

    def scroll_codimension(self, curve: CurveParametrization) -> ScrollReport:
        """
        U = {f ∈ ⟨f₁,…,fₙ⟩ : f/f₀ ∈ H⁰(O_C(H − D))}，曲线落在余维数 dim U 的卷轴上。

        H 在 f₀ 的根 c_j 处系数为 max(0, m_j − m′_j)，在 ∞ 处为 max(0, d′ − deg f₀)；
        D 是 x₁ = f₁/f₀ 在 P 以外的极点除子。f₀ 必须在 QQ 上分裂。
        """
        norm = curve.normalized()
        f0 = norm.polys[0]
        coords = [p for p in norm.polys[1:] if not p.is_zero]
        if not f0.splits_over_q():
            raise CurveError("irrational roots unsupported: f0 does not split over Q")
        roots = f0.rational_roots()
        # f₁ 取赋值最小的坐标
        f1 = min(coords, key=lambda p: (p.valuation, coords.index(p)))

        h_div: Dict[str, int] = {}
        d_div: Dict[str, int] = {}
        conditions: Dict[Fraction, int] = {}
        for root, mult in roots.items():
            m_prime = min(p.multiplicity_at(root) for p in coords)
            h_j = max(0, mult - m_prime)
            d_j = max(0, mult - f1.multiplicity_at(root))
            h_div[format_fraction(root)] = h_j
            d_div[format_fraction(root)] = d_j
            conditions[root] = mult - (h_j - d_j)
        d_prime = max(p.degree for p in coords)
        h_inf = max(0, d_prime - f0.degree)
        d_inf = max(0, f1.degree - f0.degree)
        h_div["inf"] = h_inf
        d_div["inf"] = d_inf
        degree_cap = f0.degree + h_inf - d_inf

        # 线性条件：在 c_j 处的 Taylor 系数与超出次数上限的系数为零
        rows: List[List[sympy.Rational]] = []
        shifted = {root: [p.taylor_shift(root) for p in coords] for root in conditions}
        for root, order in conditions.items():
            for k in range(order):
                rows.append([sympy_rational(q.coefficient(k)) for q in shifted[root]])
        for k in range(degree_cap + 1, d_prime + 1):
            rows.append([sympy_rational(p.coefficient(k)) for p in coords])
        if rows:
            null = sympy.Matrix(rows).nullspace()
        else:
            null = [sympy.Matrix([1 if i == j else 0 for i in range(len(coords))]) for j in range(len(coords))]
        u_basis: List[Poly] = []
        for vec in null:
            u = Poly()
            for coeff, p in zip(vec, coords):
                u = u + p.scale(to_fraction(coeff))
            u_basis.append(u)

        # 乘法映射 [φ; x₁φ]，φ ∈ {1} ∪ U/f₀
        one = Poly.constant(1)
        top: List[RationalFunction] = [(one, one)] + [(u, f0) for u in u_basis]
        bottom: List[RationalFunction] = [(f1, f0)] + [(f1 * u, f0 * f0) for u in u_basis]

        span = list(norm.polys)
        forms: Optional[List[List[List[Fraction]]]] = [[], []]
        for row_index, row in enumerate((top, bottom)):
            for num, den in row:
                # num/den = L(f)/f₀，L 为坐标的线性型
                lifted, rem = _divmod(num * f0, den)
                coords_of = _span_coordinates(lifted, span) if rem.is_zero else None
                if coords_of is None:
                    forms = None
                    break
                forms[row_index].append(coords_of)
            if forms is None:
                break
        # 没有坐标线性型时不判断包含关系
        minors = self.verify_linear_forms(curve, forms) if forms is not None else None
        log.info(f"scroll_codimension：dim U = {len(u_basis)}，矩阵{'可' if forms else '不可'}用坐标线性型表示")
        return ScrollReport(
            codimension=len(u_basis),
            u_basis=u_basis,
            matrix=[top, bottom],
            linear_forms=forms,
            divisor_h=h_div,
            divisor_d=d_div,
            minors_vanish=minors,
        )

    # --- 单项式嵌入 ---
    def hyperelliptic_embedding(self, g: int) -> Tuple[CurveParametrization, ScrollLayout]:
        """(1, x, …, x^g, z)，x = t²、z = t^{2g+1}，落在锥 S_{0,g} 上"""
        if g < 1:
            raise CurveError(f"hyperelliptic_embedding needs g >= 1, got {g}")
        polys = [Poly.monomial(2 * k) for k in range(g + 1)] + [Poly.monomial(2 * g + 1)]
        curve = CurveParametrization(tuple(polys), name=f"hyperelliptic genus {g}")
        layout = ScrollLayout((0, g), (g + 1,) + tuple(range(g + 1)))
        return curve, layout

    def bielliptic_embedding(self, s: NumericalSemigroup) -> Tuple[CurveParametrization, ScrollLayout]:
        """
        x = t⁴、y = t⁶ 时的单项式嵌入，次数 2g + 1，位于 ℙ^{g+1}。

        对称情形取 (1, x…x^m, y…xⁿy, z, xz)，z = t^{2g−3}，卷轴 S_{m,n,1}；
        非对称情形取 (1, x…x^m, y…xⁿy, z, u)，z = t^{2g−1}、u = t^{2g+1}，卷轴 S_{m,n,0,0}。
        """
        g = s.genus
        if g < 5 or not numset_service.is_bielliptic(s):
            raise CurveError(f"{s.describe()} is not a bielliptic semigroup of genus >= 5")
        m = g // 2
        n = (g - 3) // 2  # ⌈(g−4)/2⌉
        xs = [Poly.monomial(4 * k) for k in range(m + 1)]
        ys = [Poly.monomial(6 + 4 * k) for k in range(n + 1)]
        if numset_service.is_symmetric(s):
            tail = [Poly.monomial(2 * g - 3), Poly.monomial(2 * g + 1)]
            blocks = (m, n, 1)
        else:
            tail = [Poly.monomial(2 * g - 1), Poly.monomial(2 * g + 1)]
            blocks = (m, n, 0, 0)
        polys = tuple(xs + ys + tail)
        curve = CurveParametrization(polys, name=f"bielliptic {s.describe()}")
        layout = ScrollLayout(blocks, tuple(range(len(polys))))
        return curve, layout


# 全局实例
scroll_service = ScrollService()
