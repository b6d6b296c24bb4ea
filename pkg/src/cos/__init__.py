"""COS comparator for one and two assets"""
from .cos_method import CosConfig, CosResult, cos1d_price, cos2d_price, cos_price, truncation_range

__all__ = ["CosConfig", "CosResult", "cos1d_price", "cos2d_price", "cos_price", "truncation_range"]
