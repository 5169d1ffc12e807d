# -*- coding: utf-8 -*-

import logging
from typing import Any, Dict, Optional, Tuple

from src.curve.models.curve import CurveError, CurveParametrization
from src.curve.models.series import Poly, Scalar, to_fraction
from src.curve.services.classification_service import classification_service
from src.curve.services.gonality_service import gonality_service
from src.curve.services.local_algebra_service import local_algebra_service
from src.curve.services.pencil_service import pencil_service
from src.curve.services.scroll_service import scroll_service
from src.semigroup.services.numset_service import numset_service

log = logging.getLogger(__name__)


class CurveService:
    """常用曲线族与完整分析报告。"""

    def genus3_family(self, a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> CurveParametrization:
        """
        f₀ = 1 − 2at + bt² + ct³ + dt⁴，f₁ = t² − at³，f₂ = t⁴。

        c + ab − a³ ≠ 0 时 P 的半群为 ⟨2,7⟩；ac ≠ 0 时曲线非超椭圆且三角。
        """
        a, b, c, d = (to_fraction(x) for x in (a, b, c, d))
        f0 = Poly((1, -2 * a, b, c, d))
        f1 = Poly((0, 0, 1, -a))
        f2 = Poly.monomial(4)
        return CurveParametrization((f0, f1, f2), name=f"genus-3 family a={a} b={b} c={c} d={d}")

    def analyze(self, curve: CurveParametrization,
                u: Optional[Tuple[Poly, Poly]] = None,
                sections: Optional[Tuple[Tuple[Poly, Poly], Tuple[Poly, Poly]]] = None) -> Dict[str, Any]:
        """
        汇总一条曲线的全部可计算信息，输出可直接序列化为 JSON 的字典。

        Args:
            curve: 曲线。
            u: 给出时附带 g³₈ 构造（x = u², y = u³）。
            sections: 直接给出 (x, y) 时附带 g³₈ 构造。
        """
        algebra = local_algebra_service.local_algebra(curve)
        s = algebra.semigroup
        weights = numset_service.weight_report(s)
        k = numset_service.k_set(s)
        report: Dict[str, Any] = {
            "curve": curve.to_dict(),
            "local_algebra": algebra.to_dict(),
            "semigroup": s.describe(),
            "genus": s.genus,
            "multiplicity": s.multiplicity,
            "k_set": k.describe(),
            "pole_orders": local_algebra_service.pole_orders_of_differentials(curve),
            "differential_weight": local_algebra_service.differential_weight(curve),
            "weights": weights.to_dict(),
            "map_degree": pencil_service.curve_map_degree(curve),
            "hyperelliptic": classification_service.is_hyperelliptic_curve(curve).to_dict(),
        }
        if s.multiplicity != 2:
            report["bielliptic"] = classification_service.is_bielliptic_curve(curve).to_dict()
        pencil = pencil_service.non_removable_pencil(curve)
        report["non_removable_pencil"] = pencil.to_dict() if pencil else None
        bounds = gonality_service.gonality_bounds(curve)
        report["gonality"] = bounds.to_dict()
        try:
            report["scroll"] = scroll_service.scroll_codimension(curve).to_dict()
        except CurveError as e:
            report["scroll"] = {"error": str(e)}
        if u is not None or sections is not None:
            report["g83"] = classification_service.g83_construction(curve, u=u, sections=sections).to_dict()
        log.info(f"曲线分析完成：S = {s.describe()}，g = {s.genus}，gon ∈ [{bounds.lower}, {bounds.upper}]")
        return report


# 全局实例
curve_service = CurveService()
