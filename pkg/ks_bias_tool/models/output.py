"""
命令列輸出記錄
"""
from typing import Any, Dict

from pydantic import BaseModel, ConfigDict, Field

from ks_bias_tool.utils.formatting import render_value


class OutputRecord(BaseModel):
    """一次命令執行的完整輸出

    parameters 包含重現本次執行所需的全部參數（含種子）；
    provenance 記錄版本、容許誤差與重複次數等計算條件。
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    command: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    results: Dict[str, Any] = Field(default_factory=dict)
    provenance: Dict[str, Any] = Field(default_factory=dict)

    def rendered(self, digits: int = 6) -> Dict[str, Any]:
        """有理數展開為 {fraction, decimal} 的可序列化形式"""
        return {
            "command": self.command,
            "parameters": render_value(self.parameters, digits),
            "results": render_value(self.results, digits),
            "provenance": render_value(self.provenance, digits),
        }
