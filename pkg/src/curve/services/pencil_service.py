# -*- coding: utf-8 -*-

import logging
import random
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import sympy

from src import config
from src.curve.config import curve_config as cfg
from src.curve.models.curve import BasePointStatus, CurveError, CurveParametrization, Pencil
from src.curve.models.series import T, Poly, expand, poly_gcd
from src.curve.models.triangular_basis import TriangularBasis
from src.curve.services.local_algebra_service import local_algebra_service

log = logging.getLogger(__name__)


class PencilService:
    """
    铅笔 O_C⟨1, f/h⟩ 的次数与映射次数。

    次数公式：k = #(v(A_P)∖S) + deg h + max(0, deg f − deg h)，
    其中 A_P = O_P + (f/h)·O_P 由模闭包算出。
    """

    def __init__(self, seed: int = config.SEED):
        self.seed = seed

    def _normalize(self, f: Poly, h: Poly) -> Tuple[Poly, Poly, bool]:
        """去掉公因式，保证 h(0) ≠ 0 且 f(0) = 0；返回值的第三项表示是否去掉过公因式"""
        if f.is_zero and h.is_zero:
            raise CurveError("Both pencil sections are zero")
        if f.is_zero or h.is_zero:
            raise CurveError("constant map: one pencil section is zero")
        common = f.gcd(h)
        removed = common.degree > 0
        if removed:
            f, h = f.exact_div(common), h.exact_div(common)
        if not h.coefficient(0):
            f, h = h, f
        f = f - h.scale(f.coefficient(0) / h.coefficient(0))
        if f.is_zero:
            raise CurveError("constant map: f/h is constant")
        return f, h, removed

    def pencil_degree(self, curve: CurveParametrization, f: Poly, h: Poly, source: str = "") -> Pencil:
        """
        Args:
            curve: 曲线。
            f: 分子截面。
            h: 分母截面。
            source: 记录铅笔来历的标签，写入报告。
        """
        f, h, removed = self._normalize(f, h)
        values, extra = self.stalk_values(curve, [(f, h)])
        k = len(extra) + h.degree + max(0, f.degree - h.degree)
        if extra:
            status = BasePointStatus.NON_REMOVABLE
        elif removed:
            status = BasePointStatus.REMOVABLE
        else:
            status = BasePointStatus.NONE
        return Pencil(f, h, k, status, values, extra, source=source)

    def stalk_values(self, curve: CurveParametrization,
                     fractions: Sequence[Tuple[Poly, Poly]]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """
        A_P = O_P + Σ wⱼ·O_P 在导子以下的值集，以及其中不属于 S 的部分。

        每个 wⱼ = f/h 要求 h(0) ≠ 0。A_P 对 O_P 封闭，只需把 O_P 的基乘以各 wⱼ。
        """
        algebra = local_algebra_service.local_algebra(curve)
        c = algebra.conductor
        if c == 0:
            return (), ()
        rows = list(algebra.basis.rows.values())
        stalk = TriangularBasis(c)
        for b in rows:
            stalk.insert(b)
        for f, h in fractions:
            w = expand(f, h, c)
            for b in rows:
                stalk.insert(b * w)
        s = algebra.semigroup
        return stalk.values, tuple(v for v in stalk.values if v not in s)

    def non_removable_pencil(self, curve: CurveParametrization) -> Optional[Pencil]:
        """
        重数为 2 时，由 f₀ = 1 + a_r t^r + … 与 f₁ = t² + b_{2+s} t^{2+s} + … 判断
        ⟨1, t²⟩ 是否带不可去基点；不存在的尾项记为 +∞。
        """
        algebra = local_algebra_service.local_algebra(curve)
        if algebra.multiplicity != 2:
            return None
        norm = curve.normalized()
        f0 = norm.polys[0]
        f1 = next((p for p in norm.polys[1:] if p.valuation == 2), None)
        if f1 is None:
            return None
        f1 = f1.scale(1 / f1.coefficient(2))
        r = next((i for i in range(1, f0.degree + 1) if f0.coefficient(i)), None)
        s = next((i for i in range(1, f1.degree - 1) if f1.coefficient(2 + i)), None)
        cond_r = r is not None and r % 2 == 1 and (s is None or r < s)
        cond_s = s is not None and s % 2 == 1 and (r is None or s < r)
        cond_rs = (
            r is not None and r == s and r % 2 == 1 and f0.coefficient(r) != f1.coefficient(2 + s)
        )
        if not (cond_r or cond_s or cond_rs):
            return None
        low = min(i for i in (r, s) if i is not None)
        formula = 2 + algebra.genus - (low + 1) // 2
        pencil = self.pencil_degree(curve, Poly.monomial(2), Poly.constant(1), source="<1, t^2>")
        pencil.formula_degree = formula
        if pencil.degree != formula:
            log.warning(f"⟨1, t²⟩ 的模闭包次数 {pencil.degree} 与公式值 {formula} 不一致 (r={r}, s={s})")
        return pencil

    # --- 映射次数 ---
    def _sample_points(self, count: int) -> List[Fraction]:
        rng = random.Random(self.seed)
        points: List[Fraction] = []
        while len(points) < count:
            p = Fraction(rng.randint(*cfg.SAMPLE_NUMERATOR_RANGE), rng.randint(*cfg.SAMPLE_DENOMINATOR_RANGE))
            if p not in points:
                points.append(p)
        return points

    def map_degree(self, polys: Sequence[Poly]) -> int:
        """
        t ↦ (g₀ : … : g_k) 的次数：一般纤维 {t : g(t) = g(t₀)} 的点数，
        即 gcd_{i<j} (gᵢ(t)·gⱼ(t₀) − gᵢ(t₀)·gⱼ(t)) 的次数。在 3 个随机有理点上取最小值。
        """
        polys = list(polys)
        if len(polys) < 2:
            raise CurveError("map_degree needs at least two coordinates")
        common = poly_gcd([p for p in polys if not p.is_zero])
        if common.degree > 0:
            polys = [p.exact_div(common) if not p.is_zero else p for p in polys]
        exprs = [p.to_sympy() for p in polys]
        degrees = []
        for t0 in self._sample_points(cfg.MAP_DEGREE_SAMPLES):
            r0 = sympy.Rational(t0.numerator, t0.denominator)
            values = [e.eval(r0) for e in exprs]
            fibre = sympy.Poly(0, T, domain=sympy.QQ)
            for i in range(len(exprs)):
                for j in range(i + 1, len(exprs)):
                    F = exprs[i] * values[j] - exprs[j] * values[i]
                    if not F.is_zero:
                        fibre = F if fibre.is_zero else fibre.gcd(F)
            if fibre.is_zero:
                raise CurveError("constant map: all coordinate ratios are constant")
            degrees.append(fibre.degree())
        if len(set(degrees)) > 1:
            log.warning(f"map_degree 在不同采样点上不一致：{degrees}，取最小值")
        return min(degrees)

    def curve_map_degree(self, curve: CurveParametrization) -> int:
        return self.map_degree(curve.polys)


# 全局实例
pencil_service = PencilService()
