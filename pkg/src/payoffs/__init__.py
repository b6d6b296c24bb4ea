"""Payoffs, payoff transforms and log-Gamma support"""
from .base import PayoffFamily, PayoffSpec
from .gamma import log_gamma
from .transforms import (
    PayoffStripCheck,
    log_payoff_hat,
    payoff,
    payoff_hat,
    payoff_margins,
    strip_contains_P,
)

__all__ = [
    "PayoffFamily",
    "PayoffSpec",
    "PayoffStripCheck",
    "log_gamma",
    "log_payoff_hat",
    "payoff",
    "payoff_hat",
    "payoff_margins",
    "strip_contains_P",
]
