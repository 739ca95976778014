"""
工具模組

提供日誌設定與數值格式化等輔助功能。
"""

from .logger import setup_logger
from .formatting import render_rational, render_value

__all__ = ["setup_logger", "render_rational", "render_value"]
