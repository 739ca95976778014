"""
對立分布族模組

odds-power 分布函數 G_θ 的求值、反函數、抽樣，以及各 rank 的最偏誤指數。
求值經由對數勝算 θ·logit(x) 與 logistic 函數，避免大 θ 或 x 接近 1 時溢位。
"""
import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import expit, logit

from ks_bias_tool.core.errors import DomainError
from ks_bias_tool.core.settings import ToolSettings
from ks_bias_tool.models.alternative import (
    Alternative, DegenerateAlternative, FigureCurve, OddsPowerCdf
)
from ks_bias_tool.models.statistic import Sample

logger = logging.getLogger(__name__)

FIGURE_N = 50
FIGURE_MS = (20, 55, 100)


def cdf_values(alternative: Alternative, x: np.ndarray) -> np.ndarray:
    """向量化的 G(x)，x ∈ [0, 1]"""
    x = np.asarray(x, dtype=float)
    if isinstance(alternative, DegenerateAlternative):
        if alternative.kind == "two-point-0-1":
            return np.where(x < 1.0, 0.5, 1.0)
        return np.where(x < 0.5, 0.0, 1.0)
    if alternative.is_uniform:
        return x.copy()
    with np.errstate(divide="ignore"):
        return expit(float(alternative.theta) * logit(x))


def survival_values(alternative: Alternative, x: np.ndarray) -> np.ndarray:
    """向量化的 1 - G(x)，不經過 1 - G 的減法"""
    x = np.asarray(x, dtype=float)
    if isinstance(alternative, DegenerateAlternative):
        return 1.0 - cdf_values(alternative, x)
    if alternative.is_uniform:
        return 1.0 - x
    with np.errstate(divide="ignore"):
        return expit(-float(alternative.theta) * logit(x))


def inverse_cdf_values(alternative: OddsPowerCdf, u: np.ndarray) -> np.ndarray:
    """向量化的 G_θ^{-1}(u) = t / (1 + t)，t = odds(u)^{1/θ}"""
    u = np.asarray(u, dtype=float)
    if alternative.is_uniform:
        return u.copy()
    with np.errstate(divide="ignore"):
        return expit(logit(u) / float(alternative.theta))


def draw_values(alternative: Alternative, uniforms: np.ndarray) -> np.ndarray:
    """以反函數法把 (0,1) 均勻亂數轉為 G 的觀測值"""
    if isinstance(alternative, DegenerateAlternative):
        if alternative.kind == "two-point-0-1":
            return np.where(uniforms < 0.5, 0.0, 1.0)
        return np.full_like(uniforms, 0.5, dtype=float)
    return inverse_cdf_values(alternative, uniforms)


def alternative_key(alternative: Alternative) -> Tuple[int, ...]:
    """衍生隨機子串流用的分布識別碼"""
    if isinstance(alternative, DegenerateAlternative):
        return (2,) if alternative.kind == "two-point-0-1" else (3,)
    return (1, alternative.theta.numerator, alternative.theta.denominator)


def most_biased_exponent(n: int, m: int, rank: int) -> Alternative:
    """第 rank 階顯著水準下最偏誤的對立分布

    rank 1: θ = (n-1)/(m-1)
    rank 2: n > m 時 θ = (n-3)/(m-1)，n < m 時 θ = (n-1)/(m-3)
    rank 3: n > 2m 時 θ = (n-5)/(m-1)，m > 2n 時 θ = (n-1)/(m-5)
    分子為 0 回傳兩點分布，分母為 0 回傳 1/2 處的點質量。

    Raises:
        DomainError: n, m < 2、rank 2 且 n = m、rank 3 不滿足 n > 2m 或 m > 2n
    """
    if n < 2 or m < 2:
        raise DomainError(f"需要 n, m ≥ 2（n={n}, m={m}）")
    if rank == 1:
        numerator, denominator = n - 1, m - 1
    elif rank == 2:
        if n == m:
            raise DomainError("rank 2 需要 n ≠ m")
        numerator, denominator = (n - 3, m - 1) if n > m else (n - 1, m - 3)
    elif rank == 3:
        if n > 2 * m:
            numerator, denominator = n - 5, m - 1
        elif m > 2 * n:
            numerator, denominator = n - 1, m - 5
        else:
            raise DomainError(f"rank 3 需要 n > 2m 或 m > 2n（n={n}, m={m}）")
    else:
        raise DomainError(f"rank 須為 1、2 或 3，收到 {rank}")

    if numerator == 0:
        return DegenerateAlternative(kind="two-point-0-1")
    if denominator == 0:
        return DegenerateAlternative(kind="point-mass-half")
    return OddsPowerCdf(theta=Fraction(numerator, denominator))


def _check_theta(theta: Fraction) -> OddsPowerCdf:
    if theta <= 0:
        raise DomainError(f"θ 必須為正數，收到 {theta}")
    return OddsPowerCdf(theta=theta)


class AlternativeAPI:
    """對立分布族服務類

    提供 G_θ 的求值、反函數、可重現抽樣與作圖資料。
    """

    def __init__(self, settings: Optional[ToolSettings] = None):
        self.settings = settings or ToolSettings()

    def most_biased_exponent(self, n: int, m: int, rank: int) -> Alternative:
        """見 most_biased_exponent"""
        alternative = most_biased_exponent(n, m, rank)
        logger.info(f"n={n}, m={m}, rank={rank} 的最偏誤分布: {alternative.describe()}")
        return alternative

    def cdf(self, theta: Fraction, x: float) -> float:
        """G_θ(x)

        Raises:
            DomainError: x 不在 [0, 1] 或 θ ≤ 0
        """
        if not 0.0 <= x <= 1.0:
            raise DomainError(f"x 須在 [0, 1] 內，收到 {x}")
        return float(cdf_values(_check_theta(Fraction(theta)), np.array([x]))[0])

    def inverse_cdf(self, theta: Fraction, u: float) -> float:
        """G_θ^{-1}(u)

        Raises:
            DomainError: u 不在 [0, 1] 或 θ ≤ 0
        """
        if not 0.0 <= u <= 1.0:
            raise DomainError(f"u 須在 [0, 1] 內，收到 {u}")
        return float(inverse_cdf_values(_check_theta(Fraction(theta)), np.array([u]))[0])

    def sample(self, alternative: Alternative, count: int, seed: int) -> Sample:
        """以反函數法抽樣

        子串流由 (seed, count, 分布識別碼) 衍生，相同參數得到相同樣本。

        Raises:
            DomainError: count < 1
        """
        if count < 1:
            raise DomainError(f"抽樣數須 ≥ 1，收到 {count}")
        entropy = [seed % 2**64, count, *alternative_key(alternative)]
        rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))
        values = draw_values(alternative, rng.random(count))
        logger.debug(f"由 {alternative.describe()} 抽出 {count} 筆")
        return Sample(values=values.tolist())

    def figure_curves(
        self, n: int = FIGURE_N, ms: Sequence[int] = FIGURE_MS, points: int = 101
    ) -> List[FigureCurve]:
        """rank 1 最偏誤分布函數在等距網格上的取值

        網格為 k / (points - 1)，points 為奇數時包含 x = 1/2。

        Raises:
            DomainError: points < 2 或 (n, m) 不在定義域
        """
        if points < 2:
            raise DomainError(f"網格點數須 ≥ 2，收到 {points}")
        grid = np.arange(points) / (points - 1)
        curves = []
        for m in ms:
            alternative = most_biased_exponent(n, m, 1)
            if not isinstance(alternative, OddsPowerCdf):
                raise DomainError(f"n={n}, m={m} 的最偏誤分布不是連續分布")
            curves.append(
                FigureCurve(
                    n=n,
                    m=m,
                    theta=alternative.theta,
                    x=grid.tolist(),
                    g=cdf_values(alternative, grid).tolist(),
                )
            )
        logger.info(f"產生 {len(curves)} 條曲線，每條 {points} 點")
        return curves
