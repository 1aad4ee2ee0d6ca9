"""工具函數模組"""

__version__ = "0.1.0"
