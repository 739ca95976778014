"""
自我驗證套件

以彼此獨立的方法交叉檢查計算結果：動態規劃對暴力列舉、數值積分對精確尾機率、
蒙地卡羅對數值積分，以及已知的 p 值與顯著水準。
"""
import logging
import math
from fractions import Fraction
from typing import Callable, List, Optional

import numpy as np

from ks_bias_tool.core.alternatives import most_biased_exponent
from ks_bias_tool.core.bias import BiasAPI
from ks_bias_tool.core.exact_null import ExactNullAPI, enumerate_null_counts
from ks_bias_tool.core.settings import ToolSettings
from ks_bias_tool.core.simulation import SimulationAPI
from ks_bias_tool.models.alternative import UNIFORM, Alternative, DegenerateAlternative
from ks_bias_tool.models.verification import CheckResult, VerificationReport

logger = logging.getLogger(__name__)

ORACLE_MAX_TOTAL = 12
RELATIVE_TOLERANCE = 1e-8
SE_BAND = 4.0


def _relative_gap(value: float, reference: Fraction) -> float:
    return abs(value - float(reference)) / float(reference)


def _within_band(estimate: float, expected: float, replicates: int) -> bool:
    """模擬值與期望值之差不超過 SE_BAND 個標準誤（標準誤以期望值計算）"""
    se = math.sqrt(expected * (1.0 - expected) / replicates)
    return abs(estimate - expected) <= SE_BAND * max(se, 1.0 / replicates)


class VerificationAPI:
    """自我驗證服務類"""

    def __init__(self, settings: Optional[ToolSettings] = None):
        self.settings = settings or ToolSettings()
        self.null_api = ExactNullAPI(self.settings)
        self.bias_api = BiasAPI(self.settings, self.null_api)
        self.simulation_api = SimulationAPI(self.settings, self.null_api)

    def check_oracle(self) -> List[CheckResult]:
        """n + m ≤ 12 時動態規劃與列舉完全一致，均勻 G 的拒絕機率與精確尾機率一致"""
        results = []
        mismatched = []
        for total in range(2, ORACLE_MAX_TOTAL + 1):
            for n in range(1, total):
                m = total - n
                dp = self.null_api.null_distribution(n, m)
                if dict(zip(dp.numerators, dp.counts)) != enumerate_null_counts(n, m):
                    mismatched.append((n, m))
        results.append(
            CheckResult(
                name="null-dp-vs-enumeration",
                passed=not mismatched,
                detail=f"不一致: {mismatched}" if mismatched else f"n + m ≤ {ORACLE_MAX_TOTAL} 全部一致",
            )
        )

        worst = 0.0
        exact_mismatch = []
        for total in range(4, ORACLE_MAX_TOTAL + 1):
            for n in range(2, total - 1):
                m = total - n
                ladder = self.null_api.alpha_ladder(n, m)
                ranks = [1] + ([2] if n != m else []) + ([3] if ladder.alpha3_defined else [])
                for rank in ranks:
                    level = ladder.level(rank)
                    if self.bias_api.exact_uniform_probability(n, m, rank) != level:
                        exact_mismatch.append((n, m, rank))
                    probability = self.bias_api.rejection_probability(n, m, UNIFORM, rank)
                    worst = max(worst, _relative_gap(probability.value, level))
        results.append(
            CheckResult(
                name="uniform-rejection-vs-dp-tail",
                passed=not exact_mismatch and worst <= RELATIVE_TOLERANCE,
                detail=f"最大相對誤差 {worst:.2e}" + (f"，閉式解不一致 {exact_mismatch}" if exact_mismatch else ""),
            )
        )
        return results

    def check_known_values(self) -> List[CheckResult]:
        """n = m = 50 的 p 值與 α 階梯的特殊值"""
        results = []
        for d, expected in (("0.26", 0.0678), ("0.28", 0.0392)):
            p = float(self.null_api.p_value(50, 50, d))
            results.append(
                CheckResult(
                    name=f"p-value-50-50-{d}",
                    passed=abs(p - expected) <= 5e-4,
                    detail=f"{p:.6f}（預期 {expected}）",
                )
            )

        alpha1 = self.null_api.alpha_ladder(10, 11).alpha1
        closed = Fraction(2 * math.factorial(10) * math.factorial(11), math.factorial(21))
        rendered = f"{float(alpha1):.3g}"
        results.append(
            CheckResult(
                name="alpha1-10-11",
                passed=alpha1 == closed and rendered == "5.67e-06",
                detail=f"α₁ = {alpha1} ≈ {rendered}",
            )
        )
        for n, m, expected in ((6, 2, Fraction(3, 7)), (7, 3, Fraction(1, 6))):
            alpha3 = self.null_api.alpha_ladder(n, m).alpha3
            results.append(
                CheckResult(
                    name=f"alpha3-{n}-{m}",
                    passed=alpha3 == expected,
                    detail=f"α₃ = {alpha3}（預期 {expected}）",
                )
            )
        return results

    def check_rank1_bias(self) -> List[CheckResult]:
        """rank 1 最偏誤分布的拒絕機率嚴格小於 α₁"""
        results = []
        for n, m in ((10, 11), (50, 20), (3, 7)):
            verdict = self.bias_api.bias_verdict(n, m, 1, most_biased_exponent(n, m, 1))
            results.append(
                CheckResult(
                    name=f"rank1-biased-{n}-{m}",
                    passed=verdict.verdict == "biased",
                    detail=f"{verdict.power_at_level:.6g} < α₁ = {float(verdict.level):.6g}: {verdict.verdict}",
                )
            )
        return results

    def check_rank2_boundary(self) -> List[CheckResult]:
        """n - m = ±2 時 rank 2 最偏誤分布即均勻分布，拒絕機率的最小值在 θ = 1"""
        results = []
        grid = np.linspace(0.5, 2.0, 41)
        nearest = float(grid[np.argmin(np.abs(grid - 1.0))])
        for n, m in ((7, 5), (5, 7), (12, 10)):
            alternative = most_biased_exponent(n, m, 2)
            ladder = self.null_api.alpha_ladder(n, m)
            uniform = self.bias_api.rejection_probability(n, m, UNIFORM, 2)
            scan = self.bias_api.exponent_scan(n, m, 2, grid)
            gap = _relative_gap(uniform.value, ladder.alpha2_closed_form)
            passed = alternative == UNIFORM and gap <= RELATIVE_TOLERANCE and scan.argmin_theta == nearest
            results.append(
                CheckResult(
                    name=f"rank2-boundary-{n}-{m}",
                    passed=passed,
                    detail=f"{alternative.describe()}，相對誤差 {gap:.2e}，最小值位於 θ = {scan.argmin_theta:g}",
                )
            )
        return results

    def check_degenerate_limits(self) -> List[CheckResult]:
        """(3,2) 與 (2,3) 的 rank 2 最偏誤分布是離散極限，拒絕機率不大於均勻時的值"""
        results = []
        for n, m, kind in ((3, 2, "two-point-0-1"), (2, 3, "point-mass-half")):
            alternative = most_biased_exponent(n, m, 2)
            uniform = self.bias_api.exact_uniform_probability(n, m, 2)
            limit = self.bias_api.rejection_probability(n, m, alternative, 2)
            passed = (
                isinstance(alternative, DegenerateAlternative)
                and alternative.kind == kind
                and limit.exact is not None
                and limit.exact <= uniform
            )
            results.append(
                CheckResult(
                    name=f"degenerate-{n}-{m}",
                    passed=passed,
                    detail=f"{alternative.describe()}: {limit.exact} ≤ {uniform}",
                )
            )
        return results

    def check_non_nesting(self) -> List[CheckResult]:
        """不同水準的偏誤集合互不包含"""
        results = []
        for witness in self.bias_api.bias_sets_non_nesting():
            lower, higher = witness.lower_level.verdict, witness.higher_level.verdict
            passed = (lower == "biased") != (higher == "biased") and "unbiased-boundary" not in (lower, higher)
            results.append(
                CheckResult(
                    name=f"non-nesting-{witness.n}-{witness.m}",
                    passed=passed,
                    detail=f"{witness.alternative.describe()}: α₁ {lower}，α₂ {higher}",
                )
            )
        return results

    def check_simulation(self, replicates: int, seed: int) -> List[CheckResult]:
        """蒙地卡羅對精確水準與數值積分的校準"""
        results = []
        for n, m, rank in ((5, 3, 2), (3, 3, 1), (6, 2, 3)):
            estimate = self.simulation_api.verify_extreme_tail(n, m, UNIFORM, rank, replicates, seed)
            expected = float(estimate.level_used)
            results.append(
                CheckResult(
                    name=f"mc-calibration-{n}-{m}-rank{rank}",
                    passed=_within_band(estimate.power, expected, replicates),
                    detail=f"{estimate.power:.5f}（精確 {expected:.5f}）",
                )
            )

        power = self.simulation_api.estimate_power(50, 50, UNIFORM, Fraction(1, 20), replicates, seed)
        results.append(
            CheckResult(
                name="mc-calibration-50-50-alpha0.05",
                passed=_within_band(power.power, float(power.level_used), replicates),
                detail=f"{power.power:.5f}（實際水準 {float(power.level_used):.5f}）",
            )
        )

        alternative: Alternative = most_biased_exponent(3, 7, 1)
        quadrature = self.bias_api.rejection_probability(3, 7, alternative, 1)
        estimate = self.simulation_api.verify_extreme_tail(3, 7, alternative, 1, replicates, seed)
        results.append(
            CheckResult(
                name="mc-vs-quadrature-3-7-rank1",
                passed=_within_band(estimate.power, quadrature.value, replicates),
                detail=f"{estimate.power:.5f}（積分 {quadrature.value:.5f}）",
            )
        )
        return results

    def run(self, replicates: int = 100_000, seed: int = 1) -> VerificationReport:
        """執行全部檢查

        Args:
            replicates: 蒙地卡羅檢查的重複次數
            seed: 蒙地卡羅檢查的種子

        Returns:
            VerificationReport（不因失敗而拋出例外，由呼叫端決定如何處理）
        """
        logger.info(f"執行自我驗證：蒙地卡羅 {replicates} 次，種子 {seed}")
        groups: List[Callable[[], List[CheckResult]]] = [
            self.check_oracle,
            self.check_known_values,
            self.check_rank1_bias,
            self.check_rank2_boundary,
            self.check_degenerate_limits,
            self.check_non_nesting,
            lambda: self.check_simulation(replicates, seed),
        ]
        checks: List[CheckResult] = []
        for group in groups:
            checks.extend(group())
        for check in checks:
            if not check.passed:
                logger.warning(f"檢查未通過 {check.name}: {check.detail}")
        return VerificationReport(checks=checks, replicates=replicates, seed=seed)
