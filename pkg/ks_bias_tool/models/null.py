"""
精確虛無分布相關資料模型

機率一律以 Fraction 保存，只在輸出時轉為浮點或十進位字串。
"""
import math
from fractions import Fraction
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator


class NullDistribution(BaseModel):
    """H: F = G 下 D_{n,m} 的精確分布

    numerators[k] / (n·m) 為第 k 個支撐點，counts[k] 為達到該最大偏差的路徑數。
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1)
    m: int = Field(..., ge=1)
    numerators: List[int]
    counts: List[int]

    @model_validator(mode="after")
    def _normalized(self) -> "NullDistribution":
        if len(self.numerators) != len(self.counts):
            raise ValueError("支撐點與計數長度不一致")
        if sum(self.counts) != self.total:
            raise ValueError("路徑計數總和不等於 C(n+m, n)")
        return self

    @property
    def denominator(self) -> int:
        return self.n * self.m

    @property
    def total(self) -> int:
        return math.comb(self.n + self.m, self.n)

    @property
    def support(self) -> List[Fraction]:
        return [Fraction(k, self.denominator) for k in self.numerators]

    @property
    def probabilities(self) -> List[Fraction]:
        return [Fraction(c, self.total) for c in self.counts]

    def tail(self, numerator: int) -> Fraction:
        """P(D ≥ numerator / (n·m))"""
        count = sum(c for k, c in zip(self.numerators, self.counts) if k >= numerator)
        return Fraction(count, self.total)

    def tails(self) -> List[Fraction]:
        """各支撐點的 P(D ≥ d)"""
        running = self.total
        result = []
        for c in self.counts:
            result.append(Fraction(running, self.total))
            running -= c
        return result

    def cdf(self) -> List[Fraction]:
        running = 0
        result = []
        for c in self.counts:
            running += c
            result.append(Fraction(running, self.total))
        return result


class AlphaLadder(BaseModel):
    """最小的三個可達顯著水準 α₁ < α₂ < α₃ 與對應的拒絕門檻"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    m: int
    alpha1: Fraction
    alpha2: Fraction
    alpha3: Optional[Fraction] = None
    threshold1: Fraction
    threshold2: Fraction
    threshold3: Optional[Fraction] = None
    k: int
    k2: Optional[int] = None
    alpha2_closed_form: Fraction
    alpha2_identity_applies: bool
    alpha3_defined: bool
    verified: bool

    def level(self, rank: int) -> Fraction:
        """第 rank 階的顯著水準"""
        if rank == 1:
            return self.alpha1
        if rank == 2:
            return self.alpha2
        if rank == 3 and self.alpha3 is not None:
            return self.alpha3
        raise ValueError(f"rank {rank} 的顯著水準未定義")

    def threshold(self, rank: int) -> Fraction:
        """第 rank 階的拒絕門檻"""
        if rank == 1:
            return self.threshold1
        if rank == 2:
            return self.threshold2
        if rank == 3 and self.threshold3 is not None:
            return self.threshold3
        raise ValueError(f"rank {rank} 的拒絕門檻未定義")


class RejectionThreshold(BaseModel):
    """名目水準 α 對應的離散拒絕門檻（D ≥ threshold 時拒絕）"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    m: int
    nominal_alpha: Fraction
    numerator: int
    attained_level: Fraction
    never_rejects: bool = False
    # 產生相同門檻的名目 α 區間 [lower, upper)
    level_interval: Tuple[Fraction, Fraction]

    @property
    def denominator(self) -> int:
        return self.n * self.m

    @property
    def threshold(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)
