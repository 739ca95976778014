"""
日誌工具模組

提供統一的日誌設定與管理功能。
"""
import os
import sys
import logging
from typing import Optional
from dotenv import load_dotenv

# 載入環境變數（僅 LOG_LEVEL 會被讀取）
load_dotenv()


def setup_logger(name: Optional[str] = None, level: Optional[str] = None) -> logging.Logger:
    """設置並返回日誌器

    Args:
        name: 日誌器名稱，如未提供則使用 'ks_bias_tool'
        level: 日誌級別，如未提供則從環境變數讀取，預設為 WARNING

    Returns:
        已設置的日誌器
    """
    name = name or "ks_bias_tool"
    log_format = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    date_format = "%Y-%m-%d %H:%M:%S"

    if level is None:
        level = os.getenv("LOG_LEVEL", "WARNING").upper()

    numeric_level = getattr(logging, level.upper(), logging.WARNING)

    logger = logging.getLogger(name)

    # 避免重複設置處理器
    if not logger.handlers:
        # 輸出到 stderr，stdout 保留給機器可讀的結果
        console_handler = logging.StreamHandler(sys.stderr)
        formatter = logging.Formatter(log_format, date_format)
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)

    for handler in logger.handlers:
        handler.setLevel(numeric_level)
    logger.setLevel(numeric_level)

    return logger
