"""
自我驗證結果資料模型
"""
from typing import List

from pydantic import BaseModel, ConfigDict, computed_field


class CheckResult(BaseModel):
    """單項檢查"""

    model_config = ConfigDict(frozen=True)

    name: str
    passed: bool
    detail: str = ""


class VerificationReport(BaseModel):
    """驗證套件的全部檢查結果"""

    model_config = ConfigDict(frozen=True)

    checks: List[CheckResult]
    replicates: int
    seed: int

    @computed_field
    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]
