"""
偏誤分析相關資料模型
"""
from fractions import Fraction
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from ks_bias_tool.models.alternative import Alternative
from ks_bias_tool.models.statistic import Side

Verdict = Literal["biased", "unbiased-boundary", "not-biased-against-this-G"]


class QuadratureResult(BaseModel):
    """數值積分結果"""

    model_config = ConfigDict(frozen=True)

    value: float
    error_estimate: float = Field(..., ge=0)
    panels: int = Field(..., ge=1)


class RejectionProbability(BaseModel):
    """x ~ 均勻、y ~ G 時，D 超過第 rank 階門檻的機率

    離散極限分布以解析方式計算，exact 為精確有理數，quadrature_error 為 0。
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    m: int
    rank: Literal[1, 2, 3]
    side: Side
    alternative: Alternative
    value: float = Field(..., ge=0)
    quadrature_error: float = Field(..., ge=0)
    exact: Optional[Fraction] = None


class BiasVerdict(BaseModel):
    """第 rank 階顯著水準下，檢定對 G 是否有偏誤"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    m: int
    rank: Literal[1, 2, 3]
    alternative: Alternative
    level: Fraction
    power_at_level: float
    margin: float
    verdict: Verdict


class ScanPoint(BaseModel):
    """指數掃描中的一個網格點"""

    model_config = ConfigDict(frozen=True)

    theta: float
    probability: RejectionProbability


class ExponentScan(BaseModel):
    """θ 網格上的拒絕機率與最小值位置"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    m: int
    rank: Literal[1, 2, 3]
    points: List[ScanPoint]
    argmin_theta: float
    # 理論最偏誤指數；離散極限時為 None
    predicted_theta: Optional[Fraction] = None


class NonNestingWitness(BaseModel):
    """偏誤集合不具包含關係的見證：G 在水準 alpha 有偏誤、在 alpha_star 沒有（或相反）"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    m: int
    alternative: Alternative
    lower_level: BiasVerdict
    higher_level: BiasVerdict
