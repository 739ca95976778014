"""
核心計算模組

提供 KS 統計量、精確虛無分布、對立分布族、偏誤分析與蒙地卡羅模擬的服務類。
"""

from ks_bias_tool.core.errors import (
    KSToolError, DomainError, InputFileError, QuadratureError, VerificationError
)
from ks_bias_tool.core.settings import ToolSettings
from ks_bias_tool.core.statistic import (
    two_sided_d, one_sided_d, detect_cross_sample_ties, load_sample_file
)
from ks_bias_tool.core.exact_null import ExactNullAPI
from ks_bias_tool.core.alternatives import AlternativeAPI
from ks_bias_tool.core.quadrature import integrate
from ks_bias_tool.core.bias import BiasAPI
from ks_bias_tool.core.simulation import SimulationAPI
from ks_bias_tool.core.verification import VerificationAPI

__all__ = [
    'KSToolError',
    'DomainError',
    'InputFileError',
    'QuadratureError',
    'VerificationError',
    'ToolSettings',
    'two_sided_d',
    'one_sided_d',
    'detect_cross_sample_ties',
    'load_sample_file',
    'ExactNullAPI',
    'AlternativeAPI',
    'integrate',
    'BiasAPI',
    'SimulationAPI',
    'VerificationAPI',
]
