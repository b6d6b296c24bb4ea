"""
CLI modules for the Fourier Basket Pricer
"""
from .pricing_cli import cli, main

__all__ = ["cli", "main"]
