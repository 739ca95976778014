"""
數值格式化模組

精確有理數以「分數 + 正確捨入的十進位」兩種形式輸出。
"""
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any, Dict

import numpy as np
from pydantic import BaseModel


def decimal_string(value: Fraction, digits: int = 6) -> str:
    """將有理數正確捨入為指定有效位數的十進位字串

    Args:
        value: 精確有理數
        digits: 有效位數

    Returns:
        十進位字串，例如 Fraction(3, 7) -> '0.428571'
    """
    if value == 0:
        return "0"
    with localcontext() as ctx:
        # 單次除法即為正確捨入
        ctx.prec = digits
        result = Decimal(value.numerator) / Decimal(value.denominator)
    return format(result, "g")


def render_rational(value: Fraction, digits: int = 6) -> Dict[str, str]:
    """有理數的輸出形式"""
    return {"fraction": str(value), "decimal": decimal_string(value, digits)}


def render_value(value: Any, digits: int = 6) -> Any:
    """遞迴地把結果中的有理數與 numpy 純量轉為可序列化形式

    Args:
        value: 任意巢狀結構（dict、list、Fraction、float ...）
        digits: 有理數的有效位數

    Returns:
        可直接 json.dumps 的結構
    """
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return render_rational(value, digits)
    if isinstance(value, BaseModel):
        return render_value({k: getattr(value, k) for k in type(value).model_fields}, digits)
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, dict):
        return {str(k): render_value(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [render_value(v, digits) for v in value]
    return value
