# -*- coding: utf-8 -*-

import itertools
import logging
import random
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Tuple

import sympy

from src import config
from src.curve.config import curve_config as cfg
from src.curve.models.curve import Answer, CurveError, CurveParametrization, GonalityBounds, Pencil
from src.curve.models.series import Poly, SeriesError, expand, sympy_rational, to_fraction
from src.curve.services.classification_service import classification_service
from src.curve.services.local_algebra_service import local_algebra_service
from src.curve.services.pencil_service import pencil_service
from src.semigroup.models.numerical_semigroup import NumericalSemigroup

log = logging.getLogger(__name__)

Candidate = Tuple[Poly, Poly, str]


def forced_contribution(s: NumericalSemigroup, a: int) -> int:
    """
    v(f/h) = a 的铅笔至少贡献 a + #{s ∈ S : a + s ∉ S}：
    A_P 含有 w·O_P，值 a + s 落在间隙时各贡献一个额外值，而 deg f ≥ a。
    """
    return a + sum(1 for x in s.members_below_conductor if (a + x) not in s)


class GonalityService:
    """
    给出 gon(C) 的区间：下界来自值半群的情形分析，上界来自具体铅笔。

    上界候选依次为坐标比、t^e、f₀ 的有理根构造、过曲线点的投影，
    以及对固定 h 解线性方程组得到的 f/h ∈ O_P。
    """

    def __init__(self, seed: int = config.SEED):
        self.seed = seed

    # --- 下界 ---
    def lower_bound(self, curve: CurveParametrization) -> Tuple[int, str]:
        s = local_algebra_service.semigroup(curve)
        if s.genus == 0:
            return 1, "genus 0"
        c = s.conductor
        contributions = {a: forced_contribution(s, a) for a in range(1, c + 1)}
        lower = max(2, min(contributions.values()))
        reason = f"min over a of a + #(a+S \\ S) = {min(contributions.values())}"
        if lower == 2 and contributions[1] > 2:
            verdict = classification_service.is_hyperelliptic_curve(curve)
            if verdict.answer is Answer.NO:
                lower = 3
                reason += "; a degree-2 pencil would need t^2/h in O_P, which fails"
        return lower, reason

    # --- 上界候选 ---
    def _coordinate_ratios(self, curve: CurveParametrization) -> Iterator[Candidate]:
        polys = curve.polys
        for i, j in itertools.combinations(range(len(polys)), 2):
            if polys[i].is_zero or polys[j].is_zero:
                continue
            yield polys[i], polys[j], f"f{i}/f{j}"

    def _monomials(self, curve: CurveParametrization) -> Iterator[Candidate]:
        """(t^e, 1)：e ∈ S 时无基点，e 为间隙时带不可去基点（如 ⟨1, t²⟩）"""
        s = local_algebra_service.semigroup(curve)
        for e in range(1, s.conductor + s.multiplicity + 1):
            yield Poly.monomial(e), Poly.constant(1), f"t^{e}"

    def _root_constructions(self, curve: CurveParametrization) -> Iterator[Candidate]:
        """f₀(r) = 0 时，(f₁, f₀/(t−r)) 与 (t^m, f₀/(t−r))"""
        norm = curve.normalized()
        f0 = norm.polys[0]
        m = local_algebra_service.multiplicity(curve)
        for r in f0.rational_roots():
            if r == 0:
                continue
            h = f0.exact_div(Poly((-r, 1)))
            for i, p in enumerate(norm.polys[1:], start=1):
                if not p.is_zero:
                    yield p, h, f"f{i}/(f0/(t-{r}))"
            yield Poly.monomial(m), h, f"t^{m}/(f0/(t-{r}))"

    def _projections(self, curve: CurveParametrization) -> Iterator[Candidate]:
        """过 n−1 个曲线点的超平面组成的铅笔（去掉公共因子）"""
        polys = curve.polys
        n = len(polys) - 1
        if n < 2:
            return
        points = [to_fraction(p) for p in cfg.PROJECTION_POINTS]
        for chosen in itertools.combinations(points, n - 1):
            rows = [[sympy_rational(p(x)) for p in polys] for x in chosen]
            null = sympy.Matrix(rows).nullspace()
            if len(null) < 2:
                continue
            forms = []
            for vec in null[:2]:
                form = Poly()
                for coeff, p in zip(vec, polys):
                    form = form + p.scale(to_fraction(coeff))
                forms.append(form)
            if forms[0].is_zero or forms[1].is_zero:
                continue
            g = forms[0].gcd(forms[1])
            f, h = forms[0].exact_div(g), forms[1].exact_div(g)
            if f.degree < 1 and h.degree < 1:
                continue
            yield f, h, "projection from points at t=" + ",".join(str(x) for x in chosen)

    def _denominators(self, curve: CurveParametrization) -> List[Poly]:
        rng = random.Random(self.seed)
        bound = cfg.RANDOM_COEFFICIENT_BOUND
        dens = [Poly.constant(1), Poly((1, 1)), Poly((1, -1)), Poly((1, 0, 1))]
        while len(dens) < cfg.GONALITY_SEARCH_BUDGET:
            degree = rng.randint(1, 3)
            coeffs = [1] + [rng.randint(-bound, bound) for _ in range(degree)]
            h = Poly(tuple(coeffs))
            if h.degree >= 1 and h not in dens:
                dens.append(h)
        return dens

    def _linear_search(self, curve: CurveParametrization, best: int) -> Iterator[Candidate]:
        """
        对固定的 h，在 span{t, …, t^D} 中解 f/h ∈ O_P（对 f 的系数是线性条件）。

        h = 1、D = g + 1 时总有解：g 个间隙条件，g + 1 个未知数。
        """
        algebra = local_algebra_service.local_algebra(curve)
        c = algebra.conductor
        gaps = algebra.semigroup.gaps
        g = algebra.genus
        for h in self._denominators(curve):
            columns: List[List[Fraction]] = []
            for d in range(1, g + 2):
                if max(d, h.degree) >= best:
                    break
                try:
                    s = expand(Poly.monomial(d), h, c)
                except SeriesError:
                    break
                columns.append(algebra.basis.gap_coordinates(s, gaps))
                matrix = sympy.Matrix(len(gaps), len(columns),
                                      lambda i, j: sympy_rational(columns[j][i]))
                null = matrix.nullspace()
                if not null:
                    continue
                vec = null[0]
                f = Poly((0,) + tuple(to_fraction(x) for x in vec))
                yield f, h, f"linear search, h = {h}"
                break

    # --- 主流程 ---
    def gonality_bounds(self, curve: CurveParametrization, search_budget: Optional[int] = None) -> GonalityBounds:
        """
        Args:
            curve: 曲线。
            search_budget: 评估的候选铅笔个数上限，默认不限。
                预算用尽时 exhausted 为 True；线性搜索不受预算限制。
        """
        algebra = local_algebra_service.local_algebra(curve)
        g = algebra.genus
        lower, reason = self.lower_bound(curve)
        witnesses: Dict[Tuple[Poly, Poly], Pencil] = {}
        best = g + 2
        tried = 0
        exhausted = False

        def consider(candidate: Candidate) -> None:
            nonlocal best, tried
            f, h, label = candidate
            tried += 1
            try:
                pencil = pencil_service.pencil_degree(curve, f, h, source=label)
            except CurveError as e:
                log.debug(f"候选 {label} 被跳过：{e}")
                return
            key = (pencil.f, pencil.h)
            if key not in witnesses:
                witnesses[key] = pencil
            best = min(best, pencil.degree)

        sources = [
            self._coordinate_ratios(curve),
            self._monomials(curve),
            self._root_constructions(curve),
            self._projections(curve),
        ]
        for candidate in itertools.chain(*sources):
            if search_budget is not None and tried >= search_budget:
                exhausted = True
                log.info(f"候选预算 {search_budget} 已用尽，剩余的结构化候选未评估")
                break
            consider(candidate)
            if best <= lower:
                break
        if best > lower:
            for candidate in self._linear_search(curve, best):
                consider(candidate)
                if best <= lower:
                    break

        upper = best
        if upper > g + 1:
            log.error(f"上界 {upper} 超过 g + 1 = {g + 1}，候选集合不完整")
        if lower > upper:
            log.warning(f"下界 {lower} 超过上界 {upper}，下界截断为上界")
            lower = upper
        ranked = sorted(witnesses.values(), key=lambda p: (p.degree, p.source))
        bounds = GonalityBounds(
            lower=lower,
            upper=upper,
            witnesses=ranked[: cfg.WITNESS_LIMIT],
            lower_reason=reason,
            certified=lower == upper,
            candidates_tried=tried,
            exhausted=exhausted,
        )
        log.info(f"gonality ∈ [{lower}, {upper}]，共评估 {tried} 个候选")
        return bounds


# 全局实例
gonality_service = GonalityService()
