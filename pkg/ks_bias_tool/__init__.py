"""
雙樣本 Kolmogorov-Smirnov 檢定工具包

提供 KS 統計量的精確計算、虛無分布、最偏誤對立分布、拒絕機率積分、
偏誤判定以及蒙地卡羅檢定力模擬。
"""

__version__ = "0.1.0"
__author__ = "jell wu"
__license__ = "MIT"
