# -*- coding: utf-8 -*-

import functools
import logging
import random
from fractions import Fraction
from math import comb
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src import config
from src.curve.models.curve import Answer, CurveError
from src.curve.services.classification_service import classification_service
from src.curve.services.curve_service import curve_service
from src.curve.services.gonality_service import gonality_service
from src.curve.services.local_algebra_service import local_algebra_service
from src.semigroup.models.numerical_semigroup import NumericalSemigroup, SemigroupError
from src.semigroup.services.numset_service import numset_service
from src.semigroup.services.tableau_service import tableau_service
from src.semigroup.services.tree_service import tree_service
from src.utils.resource_monitor import ResourceMonitor
from src.verify.models.scan_report import ScanReport

log = logging.getLogger(__name__)

Sample = Tuple[Fraction, Fraction, Fraction, Fraction]


# --- 进程池中执行的逐半群函数（必须是模块级函数才能 pickle） ---
def _lemma_record(s: NumericalSemigroup) -> Optional[Dict[str, Any]]:
    """代数恒等式与 Young 图两种方式核对 W_K = W_S + 2g − c、g(K) = c − g"""
    k = numset_service.k_set(s)
    g, c = s.genus, s.conductor
    w_s, w_k = numset_service.weight(s), numset_service.weight(k)
    algebraic = w_k == w_s + 2 * g - c and k.genus == c - g
    boxes_s = tableau_service.diagram(s).boxes
    boxes_k = tableau_service.diagram(k, cols=g).boxes
    combinatorial = boxes_s == w_s and boxes_k == w_k
    if algebraic and combinatorial:
        return None
    return {"semigroup": s.describe(), "g": g, "c": c, "W_S": w_s, "W_K": w_k,
            "boxes_S": boxes_s, "boxes_K": boxes_k, "g_K": k.genus}


def _weight_record(s: NumericalSemigroup) -> Tuple:
    k = numset_service.k_set(s)
    gaps = s.gaps
    return (
        s.describe(),
        numset_service.weight(s),
        numset_service.weight(k),
        numset_service.is_symmetric(s),
        numset_service.is_hyperelliptic(s),
        numset_service.is_bielliptic(s),
        gaps[-2] if len(gaps) >= 2 else 0,
        tuple(numset_service.detect_kappa(s)),
    )


def _kappa_record(s: NumericalSemigroup, kappa: int) -> Optional[Tuple]:
    if not numset_service.is_kappa_hyperelliptic(s, kappa):
        return None
    return (
        s.describe(),
        numset_service.weight(numset_service.k_set(s)),
        numset_service.technical_hypothesis(s),
        tuple(numset_service.even_pattern(s, kappa)),
        tableau_service.t1_columns(s),
    )


def _leaf_record(s: NumericalSemigroup) -> Tuple:
    return (
        s.describe(),
        numset_service.is_symmetric(s),
        numset_service.is_hyperelliptic(s),
        len(tree_service.children(s)),
    )


def _threshold(per_genus: Dict[int, int]) -> Optional[int]:
    """从该亏格起（到扫描上限为止）不再出现违例的最小亏格"""
    threshold = None
    for g in sorted(per_genus, reverse=True):
        if per_genus[g]:
            break
        threshold = g
    return threshold


class ScanService:
    """
    在半群树上穷举核对权重相关的结论。

    每个扫描返回 ScanReport；逐半群的计算通过 tree_service.map_genus_range 分发，
    结果顺序与线程数无关。
    """

    def __init__(self, threads: int = config.THREADS):
        self.threads = threads

    def _map(self, g_min: int, g_max: int, fn) -> Dict[int, List[Any]]:
        return tree_service.map_genus_range(g_min, g_max, fn, self.threads)

    def _finish(self, report: ScanReport, monitor: ResourceMonitor) -> ScanReport:
        report.duration_s = monitor.duration_s
        report.peak_rss_mb = monitor.peak_rss_mb
        report.threads = self.threads
        log.info(
            f"{report.statement}：检查 {report.checked} 个，违例 {report.violated} 个，"
            f"耗时 {report.duration_s:.2f}s"
        )
        return report

    def _check_budget(self, g: int) -> None:
        if g > config.MAX_SCAN_GENUS:
            raise SemigroupError(f"Genus {g} exceeds the scan budget {config.MAX_SCAN_GENUS}")

    # --- 权重关系 ---
    def scan_lemma_weight_relation(self, g_max: int) -> ScanReport:
        self._check_budget(g_max)
        report = ScanReport("lemma-k", (0, g_max))
        with ResourceMonitor() as monitor:
            results = self._map(0, g_max, _lemma_record)
        for g in range(g_max + 1):
            bad = sum(1 for r in results[g] if r is not None)
            for r in results[g]:
                report.record(r is None, r)
            report.table.append({"g": g, "count": len(results[g]), "violated": bad})
        return self._finish(report, monitor)

    # --- 最大权重 ---
    def scan_max_weight(self, g: int) -> ScanReport:
        """W_K ≤ C(g,2)，等号当且仅当 S 超椭圆；非对称 S 还满足 ℓ_{g−1} ≤ 2g − 3"""
        self._check_budget(g)
        if g < 1:
            raise SemigroupError("scan_max_weight needs g >= 1")
        report = ScanReport("max-weight", (g, g))
        bound = comb(g, 2)
        with ResourceMonitor() as monitor:
            records = self._map(g, g, _weight_record)[g]
        top = max(r[2] for r in records)
        for name, _, w_k, symmetric, hyper, _, second_gap, _ in records:
            problems = []
            if w_k > bound:
                problems.append("W_K exceeds C(g,2)")
            if (w_k == bound) != hyper:
                problems.append("maximum not matched to hyperellipticity")
            if not symmetric and w_k >= bound:
                problems.append("nonsymmetric semigroup reaches C(g,2)")
            if not symmetric and second_gap > 2 * g - 3:
                problems.append("second largest gap exceeds 2g-3")
            report.record(not problems, {"semigroup": name, "W_K": w_k, "problems": problems})
        report.achievers = [{"semigroup": r[0], "W_K": r[2]} for r in records if r[2] == top]
        by_predicate = [r[0] for r in records if r[4]]
        report.params = {"g": g, "expected_max": bound, "observed_max": top,
                         "hyperelliptic_by_predicate": by_predicate}
        ties = [r[0] for r in records if r[2] == bound and not r[4]]
        for name in ties:
            # 只在 g = 2 出现：⟨3,4,5⟩ 的 W_K = 1 = C(2,2)
            report.notes.append(
                f"g = {g}: {name} attains C(g,2) = {bound} without being hyperelliptic"
            )
        if top != bound:
            report.violated += 1
            report.violations.append({"problem": f"observed max {top} != {bound}"})
        return self._finish(report, monitor)

    def scan_submaximal(self, g: int) -> ScanReport:
        """
        非超椭圆半群中 W_K 的最大值：g ≥ 11 时为 (g²−5g+10)/2，且恰由双椭圆半群取到；
        g = 10 时只记录 ⟨3,11⟩ 同样取到该值。
        """
        self._check_budget(g)
        report = ScanReport("submaximal", (g, g))
        target = (g * g - 5 * g + 10) // 2
        with ResourceMonitor() as monitor:
            records = self._map(g, g, _weight_record)[g]
        nonhyper = [r for r in records if not r[4]]
        top = max((r[2] for r in nonhyper), default=None)
        achievers = [r[0] for r in nonhyper if r[2] == top]
        bielliptic = [r[0] for r in records if r[5]]
        asserted = g >= 11
        for name, _, w_k, _, hyper, bi, _, _ in records:
            ok = True
            if asserted and not hyper:
                ok = w_k < target or (w_k == target and bi)
                ok = ok and (not bi or w_k == target)
            report.record(ok, {"semigroup": name, "W_K": w_k, "bielliptic": bi})
        report.achievers = [{"semigroup": a, "W_K": top} for a in achievers]
        report.params = {"g": g, "formula": target, "observed_max": top,
                         "bielliptic_by_predicate": bielliptic, "asserted": asserted}
        if asserted and (top != target or sorted(achievers) != sorted(bielliptic)):
            report.violated += 1
            report.violations.append({"problem": "achievers differ from the bielliptic semigroups",
                                      "achievers": achievers, "bielliptic": bielliptic})
        if g == 10:
            tie = numset_service.from_generators([3, 11]).describe()
            report.notes.append(
                f"g = 10: {tie} attains {target} = (g^2-5g+10)/2 without being bielliptic"
                if tie in achievers else f"g = 10: {tie} is not among the achievers"
            )
        return self._finish(report, monitor)

    # --- κ-超椭圆的上下界 ---
    def _bounds_scan(self, statement: str, kappa: int, g_min: int, g_max: int, use_k: bool) -> ScanReport:
        self._check_budget(g_max)
        g_min = max(g_min, 2 * kappa, 1)
        report = ScanReport(statement, (g_min, g_max), params={"kappa": kappa})
        per_genus: Dict[int, int] = {}
        with ResourceMonitor() as monitor:
            results = self._map(g_min, g_max, _weight_record)
        for g in range(g_min, g_max + 1):
            base = comb(g - 2 * kappa, 2)
            lo = base + 2 * kappa if use_k else base
            hi = base + 2 * kappa * kappa
            forward = backward = matched = 0
            weights_in_class: List[int] = []
            for name, w_s, w_k, _, _, _, _, kappas in results[g]:
                w = w_k if use_k else w_s
                in_class = kappa in kappas
                in_bounds = lo <= w <= hi
                if in_class:
                    matched += 1
                    weights_in_class.append(w)
                if in_class and not in_bounds:
                    forward += 1
                if in_bounds and not in_class:
                    backward += 1
                report.record(in_class == in_bounds, {
                    "semigroup": name, "g": g, "weight": w, "kappa_hyperelliptic": in_class,
                    "in_bounds": in_bounds, "kappas": list(kappas),
                })
            per_genus[g] = forward + backward
            report.table.append({
                "g": g, "count": len(results[g]), "kappa_hyperelliptic": matched,
                "lower": lo, "upper": hi,
                "min_weight": min(weights_in_class, default=None),
                "max_weight": max(weights_in_class, default=None),
                "forward_violations": forward, "backward_violations": backward,
            })
        report.threshold = _threshold(per_genus)
        report.notes.append("asymptotic statement: violations at small genus are data")
        return self._finish(report, monitor)

    def scan_conjecture(self, kappa: int, g_min: int, g_max: int) -> ScanReport:
        """C(g−2κ,2) + 2κ ≤ W_K ≤ C(g−2κ,2) + 2κ² 与 κ-超椭圆的双向对应"""
        return self._bounds_scan("conjecture", kappa, g_min, g_max, use_k=True)

    def scan_torres(self, kappa: int, g_min: int, g_max: int) -> ScanReport:
        """C(g−2κ,2) ≤ W_S ≤ C(g−2κ,2) + 2κ² 与 κ-超椭圆的双向对应"""
        return self._bounds_scan("torres", kappa, g_min, g_max, use_k=False)

    def scan_kappa_weight_bounds(self, kappa: int, g: int) -> ScanReport:
        """
        满足技术假设的 κ-超椭圆半群：W_K 的最小值 C(g−2κ,2) + 2κ 在 P_j = 2κ + 2j 取到，
        最大值 C(g−2κ,2) + κ² + κ 在 P_j = 4j 取到。
        """
        if kappa < 1 or g < 2 * kappa:
            raise SemigroupError(f"Need kappa >= 1 and g >= 2*kappa, got kappa={kappa}, g={g}")
        if g > max(config.MAX_SCAN_GENUS, 20):
            raise SemigroupError(f"Genus {g} exceeds the scan budget")
        base = comb(g - 2 * kappa, 2)
        expected_min, expected_max = base + 2 * kappa, base + kappa * kappa + kappa
        min_pattern = tuple(2 * kappa + 2 * j for j in range(1, kappa + 1))
        max_pattern = tuple(4 * j for j in range(1, kappa + 1))
        report = ScanReport("kappa-bounds", (g, g), params={
            "kappa": kappa, "expected_min": expected_min, "expected_max": expected_max,
            "min_pattern": list(min_pattern), "max_pattern": list(max_pattern),
        })
        with ResourceMonitor() as monitor:
            records = self._map(g, g, functools.partial(_kappa_record, kappa=kappa))[g]
        filtered = [r for r in records if r is not None and r[2]]
        excluded = sum(1 for r in records if r is not None and not r[2])
        for r in records:
            if r is None or not r[2]:
                report.record(True)
                continue
            name, w_k, _, pattern, _ = r
            report.record(expected_min <= w_k <= expected_max,
                          {"semigroup": name, "W_K": w_k, "pattern": list(pattern)})
        if filtered:
            low = min(r[1] for r in filtered)
            high = max(r[1] for r in filtered)
            low_patterns = sorted({r[3] for r in filtered if r[1] == low})
            high_patterns = sorted({r[3] for r in filtered if r[1] == high})
            for label, value, patterns in (("min", low, low_patterns), ("max", high, high_patterns)):
                first = next(r for r in filtered if r[1] == value)
                report.achievers.append({
                    "extreme": label, "W_K": value, "patterns": [list(p) for p in patterns],
                    "example": first[0], "t1_columns": list(first[4]),
                })
            if low != expected_min or low_patterns != [min_pattern]:
                report.violated += 1
                report.violations.append({"problem": f"minimum {low} at {low_patterns}"})
            if high != expected_max or high_patterns != [max_pattern]:
                report.violated += 1
                report.violations.append({"problem": f"maximum {high} at {high_patterns}"})
            report.params["disparity"] = high - low
            if high - low != kappa * kappa - kappa:
                report.violated += 1
                report.violations.append({"problem": f"disparity {high - low} != {kappa * kappa - kappa}"})
        report.params["filtered"] = len(filtered)
        report.params["excluded_by_hypothesis"] = excluded

        s0 = numset_service.s_zero(kappa, g)
        s0_expected = base + 2 * kappa * kappa
        try:
            s0_hyp = numset_service.technical_hypothesis(s0)
        except SemigroupError:
            s0_hyp = None
        report.params["s_zero"] = {
            "semigroup": s0.describe(), "genus": s0.genus,
            "symmetric": numset_service.is_symmetric(s0),
            "W_S": numset_service.weight(s0), "expected_W_S": s0_expected,
            "technical_hypothesis": s0_hyp,
        }
        return self._finish(report, monitor)

    # --- 树的叶子 ---
    def scan_leaf_law(self, g_max: int) -> ScanReport:
        """非超椭圆的对称半群没有子节点"""
        self._check_budget(g_max)
        report = ScanReport("leaf-law", (0, g_max))
        with ResourceMonitor() as monitor:
            results = self._map(0, g_max, _leaf_record)
        for g in range(g_max + 1):
            hyper_children = None
            for name, symmetric, hyper, kids in results[g]:
                if hyper:
                    hyper_children = kids
                if symmetric and not hyper:
                    report.record(kids == 0, {"semigroup": name, "children": kids})
                else:
                    report.record(True)
            report.table.append({
                "g": g, "count": len(results[g]),
                "symmetric_nonhyperelliptic": sum(1 for r in results[g] if r[1] and not r[2]),
                "hyperelliptic_children": hyper_children,
            })
        return self._finish(report, monitor)

    # --- 亏格 3 曲线族 ---
    def default_genus3_samples(self, count: int = 20, seed: int = config.SEED) -> List[Sample]:
        """随机有理参数 (a,b,c,d)，满足 ac ≠ 0 与 c + ab − a³ ≠ 0"""
        rng = random.Random(seed)
        samples: List[Sample] = []
        while len(samples) < count:
            a, b, c, d = (Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(4))
            if a == 0 or c == 0 or c + a * b - a ** 3 == 0:
                continue
            if (a, b, c, d) not in samples:
                samples.append((a, b, c, d))
        return samples

    def scan_genus3_family(self, samples: Optional[Sequence[Sample]] = None) -> ScanReport:
        """每个样本：S = ⟨2,7⟩、非超椭圆、gonality 区间为 (3, 3)"""
        samples = list(samples) if samples is not None else self.default_genus3_samples()
        report = ScanReport("genus3-family", (3, 3), params={"samples": len(samples)})
        expected = numset_service.from_generators([2, 7])
        with ResourceMonitor() as monitor:
            for a, b, c, d in samples:
                row: Dict[str, Any] = {"a": str(a), "b": str(b), "c": str(c), "d": str(d)}
                try:
                    curve = curve_service.genus3_family(a, b, c, d)
                    s = local_algebra_service.semigroup(curve)
                    verdict = classification_service.is_hyperelliptic_curve(curve)
                    bounds = gonality_service.gonality_bounds(curve)
                except CurveError as e:
                    row["error"] = str(e)
                    report.table.append(row)
                    report.record(False, row)
                    continue
                row.update({
                    "semigroup": s.describe(), "hyperelliptic": verdict.answer.value,
                    "lower": bounds.lower, "upper": bounds.upper,
                    "witness": bounds.witnesses[0].source if bounds.witnesses else None,
                })
                report.table.append(row)
                ok = (
                    s.key == expected.key and verdict.answer is Answer.NO
                    and (bounds.lower, bounds.upper) == (3, 3) and bounds.upper <= s.genus + 1
                )
                report.record(ok, row)
        if report.violated:
            report.notes.append("samples listed under violations are not certified trigonal by the candidates")
        return self._finish(report, monitor)


# 全局实例
scan_service = ScanService()
