"""
命令列介面模組

提供命令列工具的入口點和各子命令的模組。
"""
