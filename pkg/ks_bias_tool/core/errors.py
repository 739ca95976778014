"""
錯誤類別模組

所有工具層錯誤都帶有種類（kind）與命令列結束碼，方便 CLI 統一處理。
"""
from typing import Optional


class KSToolError(Exception):
    """工具錯誤的基礎類別"""

    kind: str = "tool"
    exit_code: int = 1

    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)


class DomainError(KSToolError):
    """參數超出定義域（樣本大小、rank、顯著水準等）"""

    kind = "domain"
    exit_code = 3


class InputFileError(KSToolError):
    """資料檔無法讀取或格式錯誤"""

    kind = "input"
    exit_code = 4


class QuadratureError(KSToolError):
    """數值積分達到細分上限仍未收斂

    Attributes:
        best_estimate: 失敗時的最佳積分估計
        error_estimate: 對應的誤差估計
    """

    kind = "quadrature"
    exit_code = 5

    def __init__(self, message: str, best_estimate: float, error_estimate: Optional[float] = None):
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate
        super().__init__(message)


class VerificationError(KSToolError):
    """自我驗證套件中有檢查未通過"""

    kind = "verification"
    exit_code = 6
