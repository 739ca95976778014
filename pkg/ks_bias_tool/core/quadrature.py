"""
數值積分模組

自適應二分 Gauss-Legendre 積分：每個區段比較整段與兩半段的同階公式，
差值作為誤差估計，不足時繼續二分。被積函數須接受 numpy 陣列。
"""
import logging
import math
from functools import lru_cache
from typing import Callable, List, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from ks_bias_tool.core.errors import QuadratureError
from ks_bias_tool.models.bias import QuadratureResult

logger = logging.getLogger(__name__)

Integrand = Callable[[np.ndarray], np.ndarray]

# 每個區段的捨入誤差下限（相對於區段積分的絕對值）
ROUNDOFF_FACTOR = 128 * np.finfo(float).eps


@lru_cache(maxsize=8)
def _rule(order: int) -> Tuple[np.ndarray, np.ndarray]:
    return leggauss(order)


def _adaptive(
    f: Integrand, tol: float, order: int, max_depth: int, a: float, b: float
) -> Tuple[float, float, int, bool]:
    nodes, weights = _rule(order)
    width = b - a

    def panel(lo: float, hi: float) -> float:
        half = 0.5 * (hi - lo)
        return half * float(weights @ f(0.5 * (hi + lo) + half * nodes))

    pieces: List[float] = []
    errors: List[float] = []
    stack = [(a, b, panel(a, b), 0)]
    failed = False
    while stack:
        lo, hi, whole, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        left, right = panel(lo, mid), panel(mid, hi)
        refined = left + right
        difference = abs(refined - whole)
        roundoff = ROUNDOFF_FACTOR * (abs(left) + abs(right))
        if difference <= max(tol * (hi - lo) / width, roundoff):
            pieces.append(refined)
            errors.append(difference + roundoff)
        elif depth >= max_depth:
            failed = True
            pieces.append(refined)
            errors.append(difference + roundoff)
        else:
            # 右半段先入堆疊，左半段先處理，累加順序固定
            stack.append((mid, hi, right, depth + 1))
            stack.append((lo, mid, left, depth + 1))
    return math.fsum(pieces), math.fsum(errors), len(pieces), failed


def integrate(
    f: Integrand,
    tol: float = 1e-12,
    order: int = 15,
    max_depth: int = 40,
    a: float = 0.0,
    b: float = 1.0,
    rel_tol: float = 1e-10,
) -> QuadratureResult:
    """在 [a, b] 上自適應積分 f

    各區段的容許誤差按長度比例分配，總誤差估計為各區段差值之和再加上
    浮點捨入下限。節點不含端點，端點處的極限值不需要被積函數提供。
    積分值小到 rel_tol·|值| < tol 時（例如 α₁ 量級的尾機率），以
    rel_tol·|值| 為絕對容許誤差重算一次。

    Args:
        f: 被積函數（向量化）
        tol: 絕對容許誤差
        order: 每段 Gauss-Legendre 節點數
        max_depth: 最大二分深度
        a: 下限
        b: 上限
        rel_tol: 相對容許誤差

    Returns:
        QuadratureResult

    Raises:
        QuadratureError: 達到最大深度仍未收斂，附帶目前的最佳估計
    """
    value, error, panels, failed = _adaptive(f, tol, order, max_depth, a, b)
    target = rel_tol * abs(value)
    if not failed and 0 < target < tol:
        logger.debug(f"積分值 {value:.3g} 過小，以容許誤差 {target:.3g} 重算")
        value, error, panels, failed = _adaptive(f, target, order, max_depth, a, b)

    if failed:
        logger.error(f"積分未收斂，最佳估計 {value:.6g}，誤差估計 {error:.3g}")
        raise QuadratureError(
            f"達到最大細分深度 {max_depth} 仍未收斂", best_estimate=value, error_estimate=error
        )
    logger.debug(f"積分完成：{panels} 個區段，誤差估計 {error:.3g}")
    return QuadratureResult(value=value, error_estimate=error, panels=panels)
