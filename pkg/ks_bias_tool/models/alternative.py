"""
對立分布族資料模型

G_θ(x) = odds(x)^θ / (1 + odds(x)^θ)，odds(x) = x / (1 - x)；θ = 1 即均勻分布。
θ → 0 與 θ → ∞ 的極限是兩個離散分布，以 DegenerateAlternative 表示。
"""
from fractions import Fraction
from typing import Literal, Union

from pydantic import BaseModel, ConfigDict, field_validator


class OddsPowerCdf(BaseModel):
    """odds-power 分布函數，θ 以精確有理數保存"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    theta: Fraction

    @field_validator("theta", mode="before")
    @classmethod
    def _coerce(cls, value: object) -> Fraction:
        if isinstance(value, float):
            value = Fraction(repr(value))
        theta = Fraction(value)  # type: ignore[arg-type]
        if theta <= 0:
            raise ValueError("θ 必須為正數")
        return theta

    @property
    def is_uniform(self) -> bool:
        return self.theta == 1

    def describe(self) -> str:
        return f"odds-power(theta={self.theta})"


class DegenerateAlternative(BaseModel):
    """odds-power 族的兩個離散極限

    two-point-0-1: P(y=0) = P(y=1) = 1/2（θ → 0）
    point-mass-half: P(y=1/2) = 1（θ → ∞）
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["two-point-0-1", "point-mass-half"]

    def describe(self) -> str:
        return self.kind


Alternative = Union[OddsPowerCdf, DegenerateAlternative]

UNIFORM = OddsPowerCdf(theta=Fraction(1))


class FigureCurve(BaseModel):
    """最偏誤分布函數在 x 網格上的取值（作圖資料）"""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    m: int
    theta: Fraction
    x: list[float]
    g: list[float]
