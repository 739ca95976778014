"""
精確虛無分布模組

以格點路徑計數（任意精度整數）計算 H 下 D_{n,m} 的精確分布、p 值、
離散顯著水準階梯 α₁, α₂, α₃ 以及名目水準對應的拒絕門檻。

偏差以整數 |i·m - j·n| 表示（分母 n·m），動態規劃內不做有理數比較。
"""
import logging
import math
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Tuple, Union

from ks_bias_tool.core.errors import DomainError
from ks_bias_tool.core.settings import ToolSettings
from ks_bias_tool.models.null import AlphaLadder, NullDistribution, RejectionThreshold
from ks_bias_tool.models.statistic import KsStatistic

logger = logging.getLogger(__name__)

LevelLike = Union[KsStatistic, Fraction, float, int, str]


@lru_cache(maxsize=64)
def _max_deviation_counts(n: int, m: int) -> Tuple[Tuple[int, int], ...]:
    """依路徑最大偏差分類，計算 (0,0) 到 (n,m) 的路徑數

    Returns:
        ((最大偏差, 路徑數), ...)，依偏差遞增
    """
    previous: List[Dict[int, int]] = []
    for i in range(n + 1):
        current: List[Dict[int, int]] = []
        for j in range(m + 1):
            deviation = abs(i * m - j * n)
            if i == 0 and j == 0:
                cell = {0: 1}
            else:
                cell = {}
                sources = []
                if i > 0:
                    sources.append(previous[j])
                if j > 0:
                    sources.append(current[j - 1])
                for source in sources:
                    for level, count in source.items():
                        key = level if level > deviation else deviation
                        cell[key] = cell.get(key, 0) + count
            current.append(cell)
        previous = current
    return tuple(sorted(previous[m].items()))


@lru_cache(maxsize=4096)
def _paths_within(n: int, m: int, bound: int) -> int:
    """全程滿足 |i·m - j·n| < bound 的路徑數"""
    row = [0] * (m + 1)
    for i in range(n + 1):
        for j in range(m + 1):
            if abs(i * m - j * n) >= bound:
                row[j] = 0
            elif i == 0 and j == 0:
                row[j] = 1
            else:
                row[j] = row[j] + (row[j - 1] if j > 0 else 0)
    return row[m]


@lru_cache(maxsize=64)
def _candidate_numerators(n: int, m: int) -> Tuple[int, ...]:
    """所有正的 |i·m - j·n|（遞增）；可達支撐點是其子集"""
    values = {abs(i * m - j * n) for i in range(n + 1) for j in range(m + 1)}
    values.discard(0)
    return tuple(sorted(values))


def pmf_work(n: int, m: int) -> int:
    """完整分布動態規劃工作量的上界：格點數 x 可能的偏差值個數

    偏差值都是 gcd(n, m) 的倍數且不超過 n·m；n, m 互質時實際個數約 n·m/2。
    """
    return (n + 1) * (m + 1) * (n * m // math.gcd(n, m))


def tail_count(n: int, m: int, numerator: int) -> int:
    """H 下滿足 D ≥ numerator / (n·m) 的交錯排列數"""
    total = math.comb(n + m, n)
    if numerator <= 0:
        return total
    return total - _paths_within(n, m, numerator)


def enumerate_null_counts(n: int, m: int) -> Dict[int, int]:
    """暴力列舉全部 C(n+m, n) 種交錯排列，作為動態規劃的對照

    Returns:
        {最大偏差分子: 排列數}
    """
    counts: Counter = Counter()
    for positions in combinations(range(n + m), n):
        chosen = set(positions)
        deviation = worst = 0
        for k in range(n + m):
            deviation += m if k in chosen else -n
            worst = max(worst, abs(deviation))
        counts[worst] += 1
    return dict(counts)


def to_fraction(value: Union[Fraction, float, int, str]) -> Fraction:
    """浮點數以十進位字面值轉換，0.05 得到 1/20 而非二進位近似

    Raises:
        DomainError: 無法解析（如 "abc"、"1/0"、inf）
    """
    try:
        if isinstance(value, float):
            return Fraction(repr(value))
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as e:
        raise DomainError(f"無法解析為有理數: {value!r}") from e


class ExactNullAPI:
    """精確虛無分布服務類

    提供 D_{n,m} 的完整分布、精確 p 值、α 階梯與拒絕門檻查詢。
    """

    def __init__(self, settings: Optional[ToolSettings] = None):
        """初始化

        Args:
            settings: ToolSettings 實例，如未提供則使用預設值
        """
        self.settings = settings or ToolSettings()

    def _check_sizes(self, n: int, m: int, minimum: int = 1) -> None:
        limit = self.settings.max_sample_size
        if not (minimum <= n <= limit and minimum <= m <= limit):
            raise DomainError(f"樣本大小須滿足 {minimum} ≤ n, m ≤ {limit}（n={n}, m={m}）")

    def null_distribution(self, n: int, m: int) -> NullDistribution:
        """H 下 D_{n,m} 的完整精確分布

        完整分布需要追蹤每條路徑的最大偏差，工作量隨 n·m/gcd(n, m) 成長；
        超過 max_pmf_work 時直接拒絕。單點尾機率（p_value、tail_probability）不受此限。

        Raises:
            DomainError: 樣本大小超出範圍，或工作量超過 max_pmf_work
        """
        self._check_sizes(n, m)
        work = pmf_work(n, m)
        if work > self.settings.max_pmf_work:
            raise DomainError(
                f"n={n}, m={m} 的完整分布工作量 {work} 超過上限 {self.settings.max_pmf_work}"
                f"（gcd(n, m)={math.gcd(n, m)}）；單點 p 值請改用 pvalue"
            )
        logger.info(f"計算精確虛無分布 n={n}, m={m}")
        items = _max_deviation_counts(n, m)
        logger.debug(f"支撐點數 {len(items)}")
        return NullDistribution(
            n=n,
            m=m,
            numerators=[level for level, _ in items],
            counts=[count for _, count in items],
        )

    def tail_probability(self, n: int, m: int, numerator: int) -> Fraction:
        """P(D ≥ numerator / (n·m))"""
        self._check_sizes(n, m)
        return Fraction(tail_count(n, m, numerator), math.comb(n + m, n))

    def p_value(self, n: int, m: int, d: LevelLike) -> Fraction:
        """精確 p 值 P(D_{n,m} ≥ d)

        Args:
            n, m: 樣本大小
            d: 觀測統計量，可為 KsStatistic 或 [0, 1] 內任意有理數

        Raises:
            DomainError: d 不在 [0, 1] 或樣本大小超出範圍
        """
        self._check_sizes(n, m)
        value = d.value if isinstance(d, KsStatistic) else to_fraction(d)
        if not 0 <= value <= 1:
            raise DomainError(f"統計量須在 [0, 1] 內，收到 {value}")
        # D 只取 k/(n·m)，D ≥ d 等價於 k ≥ ceil(d·n·m)
        numerator = math.ceil(value * n * m)
        p = self.tail_probability(n, m, numerator)
        logger.info(f"p 值 n={n}, m={m}, d={value}: {float(p):.6g}")
        return p

    def alpha_ladder(self, n: int, m: int) -> AlphaLadder:
        """最小三個顯著水準的閉式解，並以動態規劃尾機率交叉驗證

        α₂ = k·α₁ 的等式只在 n ≠ m 時成立；n = m 時 alpha2 取動態規劃的精確值。
        α₃ 只在 n > 2m 或 m > 2n 時有定義。

        Raises:
            DomainError: n 或 m 小於 2
        """
        self._check_sizes(n, m, minimum=2)
        logger.info(f"計算 α 階梯 n={n}, m={m}")
        nm = n * m
        small = min(n, m)
        total = math.comb(n + m, n)

        alpha1 = Fraction(2, total)
        k = min(n + 1, m + 1)
        alpha2_closed = k * alpha1
        alpha2_dp = self.tail_probability(n, m, nm - small)
        verified = self.tail_probability(n, m, nm) == alpha1
        if n != m:
            verified = verified and alpha2_dp == alpha2_closed

        alpha3_defined = n > 2 * m or m > 2 * n
        alpha3 = threshold3 = k2 = None
        if alpha3_defined:
            k2 = min((m + 2) * (m + 1), (n + 2) * (n + 1)) // 2
            alpha3 = k2 * alpha1
            threshold3 = Fraction(nm - 2 * small, nm)
            verified = verified and self.tail_probability(n, m, nm - 2 * small) == alpha3

        if not verified:
            logger.warning(f"α 階梯閉式解與動態規劃不一致 n={n}, m={m}")

        return AlphaLadder(
            n=n,
            m=m,
            alpha1=alpha1,
            alpha2=alpha2_dp,
            alpha3=alpha3,
            threshold1=Fraction(1),
            threshold2=Fraction(nm - small, nm),
            threshold3=threshold3,
            k=k,
            k2=k2,
            alpha2_closed_form=alpha2_closed,
            alpha2_identity_applies=n != m,
            alpha3_defined=alpha3_defined,
            verified=verified,
        )

    def threshold_for_level(self, n: int, m: int, alpha: Union[Fraction, float, str]) -> RejectionThreshold:
        """名目水準 alpha 下最小的可達拒絕門檻

        回傳尾機率 ≤ alpha 的最小可達統計量值與其實際水準。
        alpha < α₁ 時永不拒絕：門檻記為 (n·m + 1)/(n·m)，實際水準 0。
        alpha = 1 時回傳最小支撐點。

        Raises:
            DomainError: alpha 不在 (0, 1]
        """
        self._check_sizes(n, m)
        level = to_fraction(alpha)
        if not 0 < level <= 1:
            raise DomainError(f"顯著水準須在 (0, 1] 內，收到 {alpha}")

        nm = n * m
        candidates = _candidate_numerators(n, m)

        def tail(numerator: int) -> Fraction:
            return self.tail_probability(n, m, numerator)

        top = tail(candidates[-1])
        if top > level:
            logger.info(f"alpha={level} 小於 α₁，永不拒絕")
            return RejectionThreshold(
                n=n,
                m=m,
                nominal_alpha=level,
                numerator=nm + 1,
                attained_level=Fraction(0),
                never_rejects=True,
                level_interval=(Fraction(0), top),
            )

        lo, hi = 0, len(candidates) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if tail(candidates[mid]) <= level:
                hi = mid
            else:
                lo = mid + 1

        attained = tail(candidates[lo])
        # 最小支撐點時只有 alpha = 1 對應，區間記為 (1, 1)
        upper = tail(candidates[lo - 1]) if lo > 0 else Fraction(1)

        # 機率為零的候選值不是可達支撐點，往上移到下一個可達值
        index = lo
        while index < len(candidates) - 1 and tail(candidates[index + 1]) == attained:
            index += 1

        logger.debug(f"門檻 {candidates[index]}/{nm}，實際水準 {float(attained):.6g}")
        return RejectionThreshold(
            n=n,
            m=m,
            nominal_alpha=level,
            numerator=candidates[index],
            attained_level=attained,
            level_interval=(attained, upper),
        )
