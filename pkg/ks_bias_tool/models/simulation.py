"""
蒙地卡羅模擬相關資料模型
"""
import math
from fractions import Fraction
from typing import List

from pydantic import BaseModel, ConfigDict, Field, computed_field

from ks_bias_tool.models.alternative import Alternative


class PowerEstimate(BaseModel):
    """檢定力估計：拒絕次數 / 重複次數"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    m: int
    alternative: Alternative
    rejections: int = Field(..., ge=0)
    replicates: int = Field(..., ge=1)
    seed: int
    level_used: Fraction
    threshold_used: Fraction

    @computed_field
    @property
    def power(self) -> float:
        return self.rejections / self.replicates

    @computed_field
    @property
    def standard_error(self) -> float:
        p = self.power
        return math.sqrt(p * (1.0 - p) / self.replicates)


class Table1Cell(BaseModel):
    """單一 (n, m) 的檢定力差：G 為最偏誤分布時的檢定力減去 G 為均勻時的水準"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    m: int
    alternative_power: PowerEstimate
    null_power: PowerEstimate
    reference: float

    @computed_field
    @property
    def difference(self) -> float:
        return self.alternative_power.power - self.null_power.power

    @computed_field
    @property
    def standard_error(self) -> float:
        return math.hypot(self.alternative_power.standard_error, self.null_power.standard_error)


class Table1Result(BaseModel):
    """n ∈ {10, 20, 50, 100} × m ∈ {11, 15, 21, 51, 101} 的模擬結果"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    cells: List[Table1Cell]
    replicates: int
    seed: int
    alpha_nominal: Fraction = Fraction(1, 20)
