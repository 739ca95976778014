"""
設定模組

所有數值參數集中在 ToolSettings，預設值即 CLI --help 中列出的預設值。
"""
from pydantic import BaseModel, ConfigDict, Field


class ToolSettings(BaseModel):
    """數值計算設定"""

    model_config = ConfigDict(frozen=True)

    quad_tol: float = Field(1e-12, gt=0, description="積分絕對容許誤差")
    quad_rel_tol: float = Field(1e-10, gt=0, description="積分值極小時改用的相對容許誤差")
    quad_order: int = Field(15, ge=2, description="每個區段的 Gauss-Legendre 節點數")
    quad_max_depth: int = Field(40, ge=1, description="二分細分最大深度")
    margin_factor: float = Field(10.0, ge=0, description="偏誤判定邊際 = margin_factor x 積分誤差")
    block_size: int = Field(4096, ge=1, description="每個隨機子串流區塊的重複次數")
    workers: int = Field(1, ge=1, description="平行工作執行緒數")
    max_sample_size: int = Field(500, ge=1, description="精確虛無分布的樣本大小上限")
    max_pmf_work: int = Field(
        200_000_000, ge=1, description="完整虛無分布動態規劃的工作量上限 (n+1)(m+1)·n·m/gcd(n,m)"
    )
    digits: int = Field(6, ge=1, le=40, description="十進位輸出的有效位數")
