"""
蒙地卡羅模擬模組

每個重複樣本的亂數由 (主種子, 重複編號) 決定：重複樣本以固定大小的區塊分組，
區塊 b 使用 Philox 計數器高 128 位元為 b 的子串流，區塊內第 k 列即第 b·B + k 個重複。
拒絕次數為整數加總，與執行順序及工作執行緒數無關。
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from ks_bias_tool.core.alternatives import draw_values, most_biased_exponent
from ks_bias_tool.core.bias import check_rank_domain
from ks_bias_tool.core.errors import DomainError
from ks_bias_tool.core.exact_null import ExactNullAPI
from ks_bias_tool.core.settings import ToolSettings
from ks_bias_tool.core.statistic import batch_numerators
from ks_bias_tool.models.alternative import UNIFORM, Alternative
from ks_bias_tool.models.simulation import PowerEstimate, Table1Cell, Table1Result
from ks_bias_tool.models.statistic import Side

logger = logging.getLogger(__name__)

TABLE1_NS = (10, 20, 50, 100)
TABLE1_MS = (11, 15, 21, 51, 101)
TABLE1_ALPHA = Fraction(1, 20)

# 各格 10000 次重複的參考值，用於比對
TABLE1_REFERENCE: Dict[Tuple[int, int], float] = {
    (10, 11): 0.0034, (10, 15): 0.0144, (10, 21): 0.0320, (10, 51): 0.4153, (10, 101): 0.7290,
    (20, 11): 0.0291, (20, 15): 0.0087, (20, 21): 0.0016, (20, 51): 0.2784, (20, 101): 0.9170,
    (50, 11): 0.4071, (50, 15): 0.3403, (50, 21): 0.2715, (50, 51): 0.0001, (50, 101): 0.5291,
    (100, 11): 0.9070, (100, 15): 0.9189, (100, 21): 0.9190, (100, 51): 0.4557, (100, 101): 0.0001,
}


def block_generator(seed: int, block_index: int) -> np.random.Generator:
    """第 block_index 個區塊的計數器式子串流"""
    return np.random.Generator(np.random.Philox(key=seed % 2**64, counter=block_index << 128))


class SimulationAPI:
    """蒙地卡羅模擬服務類

    提供檢定力估計、檢定力差表以及極端尾機率的模擬對照。
    """

    def __init__(self, settings: Optional[ToolSettings] = None, null_api: Optional[ExactNullAPI] = None):
        """初始化

        Args:
            settings: ToolSettings 實例，如未提供則使用預設值
            null_api: ExactNullAPI 實例，如未提供則自動創建
        """
        self.settings = settings or ToolSettings()
        self.null_api = null_api or ExactNullAPI(self.settings)

    def _block_rejections(
        self,
        seed: int,
        block_index: int,
        size: int,
        n: int,
        m: int,
        alternative: Alternative,
        threshold: int,
        side: Side,
    ) -> int:
        uniforms = block_generator(seed, block_index).random((size, n + m))
        x = uniforms[:, :n]
        y = draw_values(alternative, uniforms[:, n:])
        return int(np.count_nonzero(batch_numerators(x, y, side) >= threshold))

    def count_rejections(
        self,
        n: int,
        m: int,
        alternative: Alternative,
        threshold: int,
        replicates: int,
        seed: int,
        side: Side = "two-sided",
    ) -> int:
        """x ~ 均勻(n)、y ~ G(m) 下統計量分子 ≥ threshold 的重複次數

        Raises:
            DomainError: replicates < 1 或樣本大小 < 1
        """
        if replicates < 1:
            raise DomainError(f"重複次數須 ≥ 1，收到 {replicates}")
        if n < 1 or m < 1:
            raise DomainError(f"需要 n, m ≥ 1（n={n}, m={m}）")
        block = self.settings.block_size
        blocks = [(b, min(block, replicates - b * block)) for b in range(math.ceil(replicates / block))]
        logger.debug(f"模擬 {replicates} 次，分成 {len(blocks)} 個區塊")

        def run(item: Tuple[int, int]) -> int:
            index, size = item
            return self._block_rejections(seed, index, size, n, m, alternative, threshold, side)

        if self.settings.workers > 1:
            with ThreadPoolExecutor(max_workers=self.settings.workers) as pool:
                return sum(pool.map(run, blocks))
        return sum(run(item) for item in blocks)

    def estimate_power(
        self,
        n: int,
        m: int,
        alternative: Alternative,
        alpha: Union[Fraction, float, str],
        replicates: int,
        seed: int,
    ) -> PowerEstimate:
        """名目水準 alpha 下的檢定力估計

        拒絕規則為 D ≥ 精確虛無分布給出的門檻，而非比較 p 值。

        Raises:
            DomainError: alpha 不在 (0, 1)、replicates < 1
        """
        threshold = self.null_api.threshold_for_level(n, m, alpha)
        if threshold.nominal_alpha >= 1:
            raise DomainError(f"顯著水準須在 (0, 1) 內，收到 {alpha}")
        logger.info(
            f"估計檢定力 n={n}, m={m}, G={alternative.describe()}, "
            f"門檻 {threshold.threshold}，重複 {replicates} 次"
        )
        rejections = self.count_rejections(n, m, alternative, threshold.numerator, replicates, seed)
        return PowerEstimate(
            n=n,
            m=m,
            alternative=alternative,
            rejections=rejections,
            replicates=replicates,
            seed=seed,
            level_used=threshold.attained_level,
            threshold_used=threshold.threshold,
        )

    def reproduce_table1(self, replicates: int = 10000, seed: int = 42) -> Table1Result:
        """重現 α = 0.05 下的檢定力差表

        每格以相同種子分別模擬 G 為 rank 1 最偏誤分布與 G 為均勻的情形。
        """
        logger.info(f"計算檢定力差表：每格 {replicates} 次重複，種子 {seed}")
        cells: List[Table1Cell] = []
        for n in TABLE1_NS:
            for m in TABLE1_MS:
                alternative = most_biased_exponent(n, m, 1)
                cells.append(
                    Table1Cell(
                        n=n,
                        m=m,
                        alternative_power=self.estimate_power(n, m, alternative, TABLE1_ALPHA, replicates, seed),
                        null_power=self.estimate_power(n, m, UNIFORM, TABLE1_ALPHA, replicates, seed),
                        reference=TABLE1_REFERENCE[(n, m)],
                    )
                )
        return Table1Result(cells=cells, replicates=replicates, seed=seed, alpha_nominal=TABLE1_ALPHA)

    def verify_extreme_tail(
        self, n: int, m: int, alternative: Alternative, rank: int, replicates: int, seed: int
    ) -> PowerEstimate:
        """以模擬估計 P(D ≥ 第 rank 階門檻)，供與數值積分比對

        Raises:
            DomainError: (n, m, rank) 不在定義域
        """
        check_rank_domain(n, m, rank)
        ladder = self.null_api.alpha_ladder(n, m)
        threshold = ladder.threshold(rank)
        numerator = threshold.numerator * (n * m) // threshold.denominator
        rejections = self.count_rejections(n, m, alternative, numerator, replicates, seed)
        estimate = PowerEstimate(
            n=n,
            m=m,
            alternative=alternative,
            rejections=rejections,
            replicates=replicates,
            seed=seed,
            level_used=ladder.level(rank),
            threshold_used=threshold,
        )
        logger.info(f"rank {rank} 尾機率模擬值 {estimate.power:.6g} ± {estimate.standard_error:.2g}")
        return estimate
