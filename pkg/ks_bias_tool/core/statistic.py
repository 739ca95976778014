"""
KS 統計量計算模組

以整數運算計算經驗分布函數差的上確界，結果為精確有理數 k / (n·m)。
"""
import logging
import math
from pathlib import Path
from typing import Sequence, Tuple, Union

import numpy as np
from pydantic import ValidationError

from ks_bias_tool.core.errors import DomainError, InputFileError
from ks_bias_tool.models.statistic import Direction, KsStatistic, Sample, Side

logger = logging.getLogger(__name__)

SampleLike = Union[Sample, Sequence[float]]


def as_sample(values: SampleLike, label: str = "sample") -> Sample:
    """將輸入轉為 Sample，空樣本或非有限值視為定義域錯誤"""
    if isinstance(values, Sample):
        return values
    try:
        return Sample(values=list(values))
    except ValidationError as e:
        raise DomainError(f"{label} 無效: {e.errors()[0]['msg']}") from e


def _walk_extremes(x: Sample, y: Sample) -> Tuple[int, int]:
    """沿合併樣本的跳躍點計算 i·m - j·n 的最大值與最小值的相反數

    每個合併點在所有相同值都納入後才取值（右連續 ECDF）；
    跳躍點前一刻的值即前一個合併點的值，起點 0 也納入。

    Returns:
        (max(i·m - j·n), max(j·n - i·m))
    """
    xs, ys = x.values, y.values
    n, m = len(xs), len(ys)
    i = j = 0
    upper = lower = 0
    while i < n or j < m:
        t = min(xs[i] if i < n else math.inf, ys[j] if j < m else math.inf)
        while i < n and xs[i] == t:
            i += 1
        while j < m and ys[j] == t:
            j += 1
        deviation = i * m - j * n
        upper = max(upper, deviation)
        lower = max(lower, -deviation)
    return upper, lower


def two_sided_d(x: SampleLike, y: SampleLike) -> KsStatistic:
    """雙尾統計量 D_{n,m} = sup|F̂_n - Ĝ_m|

    Args:
        x: 第一組樣本（大小 n）
        y: 第二組樣本（大小 m）

    Returns:
        精確的 KsStatistic

    Raises:
        DomainError: 任一樣本為空
    """
    xs, ys = as_sample(x, "x"), as_sample(y, "y")
    upper, lower = _walk_extremes(xs, ys)
    return KsStatistic(
        numerator=max(upper, lower), denominator=xs.size * ys.size, side="two-sided"
    )


def one_sided_d(x: SampleLike, y: SampleLike, direction: Direction) -> KsStatistic:
    """單尾統計量

    x-above-y 回傳 sup(Ĝ_m - F̂_n)，所有 y 都小於所有 x 時等於 1；
    y-above-x 回傳 sup(F̂_n - Ĝ_m)。

    Raises:
        DomainError: 任一樣本為空或方向無效
    """
    xs, ys = as_sample(x, "x"), as_sample(y, "y")
    upper, lower = _walk_extremes(xs, ys)
    if direction == "x-above-y":
        numerator = lower
    elif direction == "y-above-x":
        numerator = upper
    else:
        raise DomainError(f"無效的方向: {direction}")
    return KsStatistic(numerator=numerator, denominator=xs.size * ys.size, side=direction)


def detect_cross_sample_ties(x: SampleLike, y: SampleLike) -> bool:
    """是否有同一數值同時出現在兩組樣本中"""
    xs = x.values if isinstance(x, Sample) else list(x)
    ys = y.values if isinstance(y, Sample) else list(y)
    return not set(xs).isdisjoint(ys)


def batch_numerators(x: np.ndarray, y: np.ndarray, side: Side = "two-sided") -> np.ndarray:
    """對多組重複樣本同時計算統計量分子（分母為 n·m）

    同一樣本內的重複值不影響結果（同號步伐的中間值介於兩端之間）；
    跨樣本的重複值在連續分布下機率為零，不另行處理。

    Args:
        x: 形狀 (B, n) 的陣列
        y: 形狀 (B, m) 的陣列
        side: 雙尾或單尾方向

    Returns:
        長度 B 的整數陣列
    """
    n, m = x.shape[1], y.shape[1]
    pooled = np.concatenate([x, y], axis=1)
    order = np.argsort(pooled, axis=1, kind="stable")
    steps = np.where(order < n, m, -n).astype(np.int64)
    walk = np.cumsum(steps, axis=1)
    upper = np.maximum(walk.max(axis=1), 0)
    lower = np.maximum((-walk).max(axis=1), 0)
    if side == "y-above-x":
        return upper
    if side == "x-above-y":
        return lower
    return np.maximum(upper, lower)


def load_sample_file(path: Union[str, Path]) -> Sample:
    """讀取資料檔：每行一個十進位數值，空白行略過

    Raises:
        InputFileError: 檔案無法讀取、數值格式錯誤或沒有任何觀測值
    """
    path = Path(path)
    logger.debug(f"讀取資料檔 {path}")
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise InputFileError(f"無法讀取 {path}: {e.strerror}") from e

    values = []
    for lineno, line in enumerate(lines, start=1):
        text = line.strip()
        if not text:
            continue
        try:
            value = float(text)
        except ValueError:
            raise InputFileError(f"{path}:{lineno} 不是數值: {text!r}")
        if not math.isfinite(value):
            raise InputFileError(f"{path}:{lineno} 不是有限值: {text!r}")
        values.append(value)

    if not values:
        raise InputFileError(f"{path} 沒有任何觀測值")
    return Sample(values=values)
