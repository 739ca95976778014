"""
偏誤分析模組

x ~ 均勻、y ~ G 時，拒絕域 D ≥ 第 rank 階門檻的機率可寫成
    Σ c · x^a (1-x)^b G(x)^p (1-G(x))^q 在 (0, 1) 上的積分，
每一項對應一個單尾分離事件（由 x 的順序統計量或 y 落在其下方的個數決定）。
同一組單項式同時給出：G 為均勻時的 Beta 函數閉式解、兩個離散極限的精確值、
以及一般 G_θ 的數值積分。
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy.special import logit

from ks_bias_tool.core.alternatives import cdf_values, most_biased_exponent, survival_values
from ks_bias_tool.core.errors import DomainError, QuadratureError
from ks_bias_tool.core.exact_null import ExactNullAPI
from ks_bias_tool.core.quadrature import integrate
from ks_bias_tool.core.settings import ToolSettings
from ks_bias_tool.models.alternative import Alternative, DegenerateAlternative, OddsPowerCdf
from ks_bias_tool.models.bias import (
    BiasVerdict, ExponentScan, NonNestingWitness, RejectionProbability, ScanPoint
)
from ks_bias_tool.models.statistic import Direction, Side

logger = logging.getLogger(__name__)


class Term(NamedTuple):
    """coefficient · x^a (1-x)^b G^p (1-G)^q，side 為所屬的單尾事件"""

    coefficient: int
    a: int
    b: int
    p: int
    q: int
    side: Direction


def check_rank_domain(n: int, m: int, rank: int) -> None:
    if rank == 1:
        if n < 1 or m < 1:
            raise DomainError(f"需要 n, m ≥ 1（n={n}, m={m}）")
    elif rank == 2:
        if n < 2 or m < 2:
            raise DomainError(f"rank 2 需要 n, m ≥ 2（n={n}, m={m}）")
        if n == m:
            raise DomainError("rank 2 只對 n ≠ m 推導")
    elif rank == 3:
        if n < 2 or m < 2 or not (n > 2 * m or m > 2 * n):
            raise DomainError(f"rank 3 需要 n > 2m 或 m > 2n（n={n}, m={m}）")
    else:
        raise DomainError(f"rank 須為 1、2 或 3，收到 {rank}")


def rejection_terms(n: int, m: int, rank: int) -> List[Term]:
    """第 rank 階拒絕域機率的被積單項式

    rank 1: 全部 y 在全部 x 之下，或全部在之上。
    rank 2 (n > m): y_(m) < x_(2) 或 x_(n-1) < y_(1)。
    rank 2 (n < m): 在 x_(1) 之下至少 m-1 個 y，或在 x_(n) 之下至多 1 個 y。
    rank 3 (n > 2m): y_(m) < x_(3) 或 x_(n-2) < y_(1)。
    rank 3 (m > 2n): 同 rank 2 (n < m)，個數界限放寬到 m-2 與 2。

    Raises:
        DomainError: (n, m, rank) 不在定義域
    """
    check_rank_domain(n, m, rank)
    rank_one = [
        Term(n, 0, n - 1, m, 0, "x-above-y"),
        Term(n, n - 1, 0, 0, m, "y-above-x"),
    ]
    if rank == 1:
        return rank_one

    if rank == 2:
        if n > m:
            c = n * (n - 1)
            return [
                Term(c, 1, n - 2, m, 0, "x-above-y"),
                Term(c, n - 2, 1, 0, m, "y-above-x"),
            ]
        return rank_one + [
            Term(n * m, 0, n - 1, m - 1, 1, "x-above-y"),
            Term(n * m, n - 1, 0, 1, m - 1, "y-above-x"),
        ]

    if n > 2 * m:
        c = n * (n - 1) * (n - 2) // 2
        return [
            Term(c, 2, n - 3, m, 0, "x-above-y"),
            Term(c, n - 3, 2, 0, m, "y-above-x"),
        ]
    pairs = n * math.comb(m, 2)
    return rejection_terms(n, m, 2) + [
        Term(pairs, 0, n - 1, m - 2, 2, "x-above-y"),
        Term(pairs, n - 1, 0, 2, m - 2, "y-above-x"),
    ]


def _select(terms: List[Term], side: Side) -> List[Term]:
    if side == "two-sided":
        return terms
    if side not in ("x-above-y", "y-above-x"):
        raise DomainError(f"無效的方向: {side}")
    return [t for t in terms if t.side == side]


def beta_integral(a: int, b: int) -> Fraction:
    """∫_0^1 x^a (1-x)^b dx = a! b! / (a+b+1)!"""
    return Fraction(math.factorial(a) * math.factorial(b), math.factorial(a + b + 1))


def half_beta_integral(a: int, b: int) -> Fraction:
    """∫_0^{1/2} x^a (1-x)^b dx，以二項展開精確計算（不完全 Beta 函數 B(1/2; a+1, b+1)）"""
    return sum(
        (
            Fraction((-1) ** k * math.comb(b, k), a + k + 1) / 2 ** (a + k + 1)
            for k in range(b + 1)
        ),
        Fraction(0),
    )


def exact_probability(terms: List[Term], alternative: Alternative) -> Optional[Fraction]:
    """均勻分布與兩個離散極限下的精確機率；其他 G 回傳 None"""
    if isinstance(alternative, OddsPowerCdf):
        if not alternative.is_uniform:
            return None
        return sum(
            (t.coefficient * beta_integral(t.a + t.p, t.b + t.q) for t in terms), Fraction(0)
        )
    if alternative.kind == "two-point-0-1":
        # (0, 1) 上 G ≡ 1/2
        return sum(
            (t.coefficient * beta_integral(t.a, t.b) / 2 ** (t.p + t.q) for t in terms),
            Fraction(0),
        )
    # 1/2 處點質量：左半段 G = 0，右半段 G = 1
    total = Fraction(0)
    for t in terms:
        if t.p == 0:
            total += t.coefficient * half_beta_integral(t.a, t.b)
        if t.q == 0:
            total += t.coefficient * half_beta_integral(t.b, t.a)
    return total


def stationarity_exponents(n: int, m: int, rank: int) -> Tuple[int, int]:
    """最偏誤條件 (y/(1-y))^{p_y} = (x/(1-x))^{p_x} 的指數 (p_y, p_x)"""
    check_rank_domain(n, m, rank)
    if rank == 1:
        return m - 1, n - 1
    if rank == 2:
        return (m - 1, n - 3) if n > m else (m - 3, n - 1)
    return (m - 1, n - 5) if n > 2 * m else (m - 5, n - 1)


class BiasAPI:
    """偏誤分析服務類

    提供拒絕機率積分、偏誤判定、最偏誤條件殘差與指數掃描。
    """

    def __init__(self, settings: Optional[ToolSettings] = None, null_api: Optional[ExactNullAPI] = None):
        """初始化

        Args:
            settings: ToolSettings 實例，如未提供則使用預設值
            null_api: ExactNullAPI 實例，如未提供則自動創建
        """
        self.settings = settings or ToolSettings()
        self.null_api = null_api or ExactNullAPI(self.settings)

    def _integrand(self, terms: List[Term], alternative: Alternative) -> Callable[[np.ndarray], np.ndarray]:
        def f(x: np.ndarray) -> np.ndarray:
            g = cdf_values(alternative, x)
            s = survival_values(alternative, x)
            total = np.zeros_like(x)
            for t in terms:
                total += t.coefficient * x**t.a * (1.0 - x) ** t.b * g**t.p * s**t.q
            return total

        return f

    def rejection_probability(
        self, n: int, m: int, alternative: Alternative, rank: int = 1, side: Side = "two-sided"
    ) -> RejectionProbability:
        """x ~ 均勻、y ~ G 時 P(D ≥ 第 rank 階門檻)

        odds-power 分布（含均勻）以數值積分計算；離散極限以解析方式精確計算。

        Raises:
            DomainError: (n, m, rank) 不在定義域
            QuadratureError: 積分未收斂
        """
        terms = _select(rejection_terms(n, m, rank), side)
        logger.info(f"計算拒絕機率 n={n}, m={m}, rank={rank}, side={side}, G={alternative.describe()}")

        if isinstance(alternative, DegenerateAlternative):
            exact = exact_probability(terms, alternative)
            return RejectionProbability(
                n=n, m=m, rank=rank, side=side, alternative=alternative,
                value=float(exact), quadrature_error=0.0, exact=exact,
            )

        try:
            result = integrate(
                self._integrand(terms, alternative),
                tol=self.settings.quad_tol,
                order=self.settings.quad_order,
                max_depth=self.settings.quad_max_depth,
                rel_tol=self.settings.quad_rel_tol,
            )
        except QuadratureError as e:
            logger.error(f"拒絕機率積分失敗: {e.message}")
            raise
        return RejectionProbability(
            n=n, m=m, rank=rank, side=side, alternative=alternative,
            value=max(result.value, 0.0), quadrature_error=result.error_estimate,
        )

    def rejection_prob_rank1(self, n: int, m: int, alternative: Alternative, side: Side = "two-sided") -> RejectionProbability:
        """分離事件（D = 1 或其單尾版本）的機率"""
        return self.rejection_probability(n, m, alternative, 1, side)

    def rejection_prob_rank2(self, n: int, m: int, alternative: Alternative, side: Side = "two-sided") -> RejectionProbability:
        """P(D ≥ max(1-1/n, 1-1/m))，需要 n ≠ m"""
        return self.rejection_probability(n, m, alternative, 2, side)

    def rejection_prob_rank3(self, n: int, m: int, alternative: Alternative, side: Side = "two-sided") -> RejectionProbability:
        """P(D ≥ 1 - 2/max(n, m))，需要 n > 2m 或 m > 2n"""
        return self.rejection_probability(n, m, alternative, 3, side)

    def exact_uniform_probability(self, n: int, m: int, rank: int = 1, side: Side = "two-sided") -> Fraction:
        """G 為均勻時拒絕機率的 Beta 函數閉式解"""
        terms = _select(rejection_terms(n, m, rank), side)
        return exact_probability(terms, OddsPowerCdf(theta=1))

    def stationarity_residual(self, n: int, m: int, rank: int, x: float, y: float) -> float:
        """p_y·logit(y) - p_x·logit(x)，在最偏誤分布 y = G(x) 上為 0

        Raises:
            DomainError: x 或 y 不在 (0, 1) 內
        """
        if not (0.0 < x < 1.0 and 0.0 < y < 1.0):
            raise DomainError(f"x, y 須在開區間 (0, 1) 內（x={x}, y={y}）")
        y_power, x_power = stationarity_exponents(n, m, rank)
        return float(y_power * logit(y) - x_power * logit(x))

    def exponent_scan(self, n: int, m: int, rank: int, theta_grid: Sequence[float]) -> ExponentScan:
        """在 θ 網格上計算 G_θ 的拒絕機率並找出最小值

        settings.workers > 1 時各網格點平行計算，結果順序與循序計算相同。

        Raises:
            DomainError: 網格為空或含非正值
        """
        grid = [float(theta) for theta in theta_grid]
        if not grid or any(not (theta > 0 and math.isfinite(theta)) for theta in grid):
            raise DomainError("θ 網格須非空且全為正的有限值")
        check_rank_domain(n, m, rank)
        logger.info(f"指數掃描 n={n}, m={m}, rank={rank}，{len(grid)} 個網格點")

        def evaluate(theta: float) -> RejectionProbability:
            return self.rejection_probability(n, m, OddsPowerCdf(theta=theta), rank)

        if self.settings.workers > 1:
            with ThreadPoolExecutor(max_workers=self.settings.workers) as pool:
                probabilities = list(pool.map(evaluate, grid))
        else:
            probabilities = [evaluate(theta) for theta in grid]

        points = [ScanPoint(theta=t, probability=p) for t, p in zip(grid, probabilities)]
        best = min(points, key=lambda point: point.probability.value)
        predicted = most_biased_exponent(n, m, rank)
        return ExponentScan(
            n=n,
            m=m,
            rank=rank,
            points=points,
            argmin_theta=best.theta,
            predicted_theta=predicted.theta if isinstance(predicted, OddsPowerCdf) else None,
        )

    def bias_verdict(self, n: int, m: int, rank: int, alternative: Alternative) -> BiasVerdict:
        """在第 rank 階顯著水準下判定檢定對 G 是否有偏誤

        power < level - margin 為 biased，power > level + margin 為
        not-biased-against-this-G，其餘為 unbiased-boundary；
        margin = margin_factor × 積分誤差估計，精確值時 margin 為 0。
        """
        probability = self.rejection_probability(n, m, alternative, rank)
        level = self.null_api.alpha_ladder(n, m).level(rank)

        if probability.exact is not None:
            margin = 0.0
            difference = probability.exact - level
            below, above = difference < 0, difference > 0
        else:
            margin = self.settings.margin_factor * probability.quadrature_error
            below = probability.value < float(level) - margin
            above = probability.value > float(level) + margin

        if below:
            verdict = "biased"
        elif above:
            verdict = "not-biased-against-this-G"
        else:
            verdict = "unbiased-boundary"
        logger.info(f"n={n}, m={m}, rank={rank}, G={alternative.describe()}: {verdict}")
        return BiasVerdict(
            n=n,
            m=m,
            rank=rank,
            alternative=alternative,
            level=level,
            power_at_level=probability.value,
            margin=margin,
            verdict=verdict,
        )

    def bias_sets_non_nesting(
        self, gap_two: Tuple[int, int] = (7, 5), gap_one: Tuple[int, int] = (10, 11)
    ) -> List[NonNestingWitness]:
        """偏誤集合 𝒜_α 在不同水準間不具包含關係的兩個見證

        |n-m| = 2：rank 1 最偏誤分布在 α₁ 有偏誤，在 α₂ 沒有。
        |n-m| = 1：rank 2 最偏誤分布在 α₁ 沒有偏誤，在 α₂ 有。
        """
        witnesses = []
        for (n, m), rank in ((gap_two, 1), (gap_one, 2)):
            alternative = most_biased_exponent(n, m, rank)
            witnesses.append(
                NonNestingWitness(
                    n=n,
                    m=m,
                    alternative=alternative,
                    lower_level=self.bias_verdict(n, m, 1, alternative),
                    higher_level=self.bias_verdict(n, m, 2, alternative),
                )
            )
        return witnesses
