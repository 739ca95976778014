"""
資料模型模組

定義樣本、統計量、精確虛無分布、對立分布、偏誤分析與模擬結果的資料結構。
"""

from ks_bias_tool.models.statistic import Direction, Side, Sample, KsStatistic
from ks_bias_tool.models.null import NullDistribution, AlphaLadder, RejectionThreshold
from ks_bias_tool.models.alternative import (
    OddsPowerCdf, DegenerateAlternative, Alternative, UNIFORM, FigureCurve
)
from ks_bias_tool.models.bias import (
    QuadratureResult, RejectionProbability, BiasVerdict, ScanPoint, ExponentScan,
    NonNestingWitness
)
from ks_bias_tool.models.simulation import PowerEstimate, Table1Cell, Table1Result
from ks_bias_tool.models.verification import CheckResult, VerificationReport
from ks_bias_tool.models.output import OutputRecord

__all__ = [
    'Direction',
    'Side',
    'Sample',
    'KsStatistic',
    'NullDistribution',
    'AlphaLadder',
    'RejectionThreshold',
    'OddsPowerCdf',
    'DegenerateAlternative',
    'Alternative',
    'UNIFORM',
    'FigureCurve',
    'QuadratureResult',
    'RejectionProbability',
    'BiasVerdict',
    'ScanPoint',
    'ExponentScan',
    'NonNestingWitness',
    'PowerEstimate',
    'Table1Cell',
    'Table1Result',
    'CheckResult',
    'VerificationReport',
    'OutputRecord',
]
