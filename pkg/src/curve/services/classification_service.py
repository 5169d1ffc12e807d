# -*- coding: utf-8 -*-

import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import sympy

from src.curve.config import curve_config as cfg
from src.curve.models.curve import (
    Answer,
    CurveError,
    CurveParametrization,
    LinearSeriesReport,
    LocalAlgebra,
    Verdict,
)
from src.curve.models.series import Poly, poly_gcd, to_fraction
from src.curve.services.local_algebra_service import local_algebra_service
from src.curve.services.pencil_service import pencil_service

log = logging.getLogger(__name__)

RING, ALPHA, BETA = sympy.ring("alpha,beta", sympy.QQ)
QQ = sympy.QQ
A_SYM, B_SYM = sympy.symbols("alpha beta")

# 写入报告的方程个数上限
_EQUATION_PREVIEW = 8


def _inverse_h(order: int) -> List:
    """1/(1 + αt + βt²) 的系数 u₀, u₁, …（QQ[α, β] 中的元素）"""
    u = [RING(1)]
    if order > 1:
        u.append(-ALPHA)
    for n in range(2, order):
        u.append(-ALPHA * u[n - 1] - BETA * u[n - 2])
    return u[:order]


def _shift(series: List, k: int, order: int) -> List:
    return ([RING(0)] * k + list(series))[:order]


def _mul(a: List, b: List, order: int) -> List:
    out = [RING(0)] * order
    for i in range(order):
        if not a[i]:
            continue
        for j in range(order - i):
            if b[j]:
                out[i + j] += a[i] * b[j]
    return out


def _rational_roots(expr, symbol) -> List[Fraction]:
    poly = sympy.Poly(expr, symbol, domain=QQ)
    if poly.degree() < 1:
        return []
    return sorted(to_fraction(r) for r in sympy.roots(poly, filter="Q"))


def _lcm(a: Poly, b: Poly) -> Poly:
    return (a * b).exact_div(a.gcd(b))


class ClassificationService:
    """
    超椭圆与双椭圆判定：在 h = 1 + αt + βt² 中搜索使给定函数落在 O_P 中的 (α, β)。

    约化 t^k/h 时，落在间隙位置上的系数就是关于 (α, β) 的多项式方程。
    """

    def _equations(self, algebra: LocalAlgebra, targets: Sequence[List]) -> List:
        c = algebra.conductor
        rows = {
            v: [QQ(x.numerator, x.denominator) for x in row.coeffs]
            for v, row in algebra.basis.rows.items()
        }
        equations = []
        for series in targets:
            r = list(series[:c])
            for j in range(c):
                a = r[j]
                if not a:
                    continue
                if j in rows:
                    row = rows[j]
                    for k in range(j, c):
                        if row[k]:
                            r[k] -= a * row[k]
                else:
                    equations.append(a)
        return [e for e in equations if e]

    def _solve(self, equations: List) -> Tuple[Answer, Optional[Tuple[Fraction, Fraction]], str]:
        """在 QQ 上求 (α, β)；Gröbner 基为 [1] 时无解，只有无理解时不做猜测"""
        if not equations:
            return Answer.YES, (Fraction(0), Fraction(0)), "no conditions"
        exprs = [e.as_expr(A_SYM, B_SYM) for e in equations]
        basis = sympy.groebner(exprs, A_SYM, B_SYM, order="lex", domain=QQ)
        gens = list(basis.exprs)
        if len(gens) == 1 and gens[0].is_number:
            return Answer.NO, None, "the (alpha, beta) system is inconsistent"
        eliminant = [g for g in gens if g.free_symbols <= {B_SYM}]
        if eliminant:
            beta_values = _rational_roots(eliminant[-1], B_SYM)
            beta_free = False
        else:
            beta_values = [to_fraction(v) for v in cfg.FREE_PARAMETER_TRIALS]
            beta_free = True
        for b0 in beta_values:
            b_rat = sympy.Rational(b0.numerator, b0.denominator)
            rest = [sympy.expand(g.subs(B_SYM, b_rat)) for g in gens]
            rest = [g for g in rest if g != 0]
            if any(g.is_number for g in rest):
                continue
            if not rest:
                return Answer.YES, (Fraction(0), b0), "alpha free"
            common = rest[0]
            for g in rest[1:]:
                common = sympy.gcd(common, g)
            alphas = _rational_roots(common, A_SYM)
            if alphas:
                return Answer.YES, (alphas[0], b0), "rational point found"
        detail = "solutions exist but none was found over Q"
        if beta_free:
            detail += f" among beta in {list(cfg.FREE_PARAMETER_TRIALS)}"
        return Answer.UNDETERMINED, None, detail

    def _search(self, curve: CurveParametrization, powers: Sequence[int], label: str) -> Verdict:
        """对 v = t²/h 检查 v^k ∈ O_P（k 取 powers 中的每一个）"""
        algebra = local_algebra_service.local_algebra(curve)
        c = algebra.conductor
        if c == 0:
            return Verdict(Answer.YES, Poly.constant(1), "O_P is smooth")
        u = _inverse_h(c)
        v = _shift(u, 2, c)
        targets = []
        power = [RING(1)] + [RING(0)] * (c - 1)
        for k in range(1, max(powers) + 1):
            power = _mul(power, v, c)
            if k in powers:
                targets.append(power)
        equations = self._equations(algebra, targets)
        answer, point, detail = self._solve(equations)
        preview = [str(e.as_expr(A_SYM, B_SYM)) for e in equations[:_EQUATION_PREVIEW]]
        witness = None
        if point is not None:
            a0, b0 = point
            witness = Poly((1, a0, b0))
        log.info(f"{label} 判定：{answer.value}（{detail}）")
        return Verdict(answer, witness, detail, preview)

    def is_hyperelliptic_curve(self, curve: CurveParametrization) -> Verdict:
        """是否存在 deg h ≤ 2、h(0) ≠ 0 的 h 使 t²/h ∈ O_P"""
        return self._search(curve, (1,), "超椭圆")

    def is_bielliptic_curve(self, curve: CurveParametrization) -> Verdict:
        """
        是否存在 v = t²/h（deg h ≤ 2、h(0) ≠ 0）使 v², v³ ∈ O_P，
        即在 P 处分歧的二重覆盖能提升到 C 上。
        """
        verdict = self._search(curve, (2, 3), "双椭圆")
        if local_algebra_service.multiplicity(curve) == 2:
            verdict.detail += "; P is hyperelliptic, the criterion assumes otherwise"
        return verdict

    # --- g³₈ 构造 ---
    def g83_construction(
        self,
        curve: CurveParametrization,
        u: Optional[Tuple[Poly, Poly]] = None,
        sections: Optional[Tuple[Tuple[Poly, Poly], Tuple[Poly, Poly]]] = None,
    ) -> LinearSeriesReport:
        """
        由 ⟨1, x, y, x²⟩ 生成的线性系，给 u 时取 x = u²、y = u³。

        Args:
            curve: 曲线。
            u: u = p/q，要求 q(0) ≠ 0。
            sections: 直接给出 (x, y)，每个都是 (分子, 分母)。
        """
        if (u is None) == (sections is None):
            raise CurveError("Give exactly one of u or sections")
        if u is not None:
            p, q = u
            if not q.coefficient(0):
                raise CurveError("u does not define the construction: u has a pole at t=0")
            x, y = (p ** 2, q ** 2), (p ** 3, q ** 3)
        else:
            x, y = sections
        for num, den in (x, y):
            if not local_algebra_service.membership(curve, num, den):
                raise CurveError(f"u does not define the construction: ({num})/({den}) is not in O_P")

        (xn, xd), (yn, yd) = x, y
        common = _lcm(xd ** 2, yd)
        tuple_polys = [
            common,
            (xn * common).exact_div(xd),
            (yn * common).exact_div(yd),
            (xn ** 2 * common).exact_div(xd ** 2),
        ]
        g = poly_gcd(tuple_polys)
        if g.degree > 0:
            tuple_polys = [pp.exact_div(g) for pp in tuple_polys]

        width = max(pp.degree for pp in tuple_polys) + 1
        matrix = sympy.Matrix([
            [sympy.Rational(c.numerator, c.denominator) for c in (pp.coeffs + (Fraction(0),) * (width - len(pp.coeffs)))]
            for pp in tuple_polys
        ])
        dimension = matrix.rank() - 1
        _, extra = pencil_service.stalk_values(curve, [x, y, (xn ** 2, xd ** 2)])
        degree = len(extra) + max(pp.degree for pp in tuple_polys)
        md = pencil_service.map_degree(tuple_polys)
        cover = pencil_service.map_degree([u[1], u[0]]) if u is not None else None
        if md == 2:
            verdict = "bielliptic: the series maps C two-to-one onto its image"
        elif md == 1:
            verdict = "birational: nonbielliptic"
        else:
            verdict = f"degree-{md} map"
        return LinearSeriesReport(
            sections=tuple_polys,
            dimension=dimension,
            degree=degree,
            base_point_free=not extra,
            map_degree=md,
            cover_degree=cover,
            verdict=verdict,
            double_cover=self.is_bielliptic_curve(curve),
        )


# 全局实例
classification_service = ClassificationService()
