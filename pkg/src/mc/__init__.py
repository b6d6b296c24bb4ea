"""Monte Carlo reference pricing"""
from .engine import (
    CONFIDENCE_FACTOR,
    BatchStats,
    MCResult,
    batch_generator,
    mc_price,
    merge_stats,
    required_samples,
    sample_terminal,
)

__all__ = [
    "CONFIDENCE_FACTOR",
    "BatchStats",
    "MCResult",
    "batch_generator",
    "mc_price",
    "merge_stats",
    "required_samples",
    "sample_terminal",
]
