"""
KS 統計量相關資料模型

樣本與統計量的資料結構；統計量以「整數分子 / (n·m)」精確表示。
"""
import math
from fractions import Fraction
from typing import List, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

# x-above-y: sup(Ĝ_m - F̂_n)，所有 y 都小於所有 x 時為 1
# y-above-x: sup(F̂_n - Ĝ_m)
Direction = Literal["x-above-y", "y-above-x"]
Side = Literal["two-sided", "x-above-y", "y-above-x"]


class Sample(BaseModel):
    """單一組別的觀測值（遞增排序）"""

    model_config = ConfigDict(frozen=True)

    values: List[float] = Field(..., min_length=1)

    @field_validator("values")
    @classmethod
    def _finite_and_sorted(cls, values: List[float]) -> List[float]:
        if not all(math.isfinite(v) for v in values):
            raise ValueError("樣本中含有非有限值")
        return sorted(values)

    @property
    def size(self) -> int:
        return len(self.values)


class KsStatistic(BaseModel):
    """KS 統計量 numerator / denominator（denominator = n·m）"""

    model_config = ConfigDict(frozen=True)

    numerator: int = Field(..., ge=0)
    denominator: int = Field(..., gt=0)
    side: Side = "two-sided"

    @model_validator(mode="after")
    def _within_unit_interval(self) -> "KsStatistic":
        if self.numerator > self.denominator:
            raise ValueError("統計量分子不可大於 n·m")
        return self

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __float__(self) -> float:
        return self.numerator / self.denominator
