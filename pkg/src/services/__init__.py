"""Services module initialization"""
from .experiment_service import ExperimentConfig, ExperimentService, Method, PriceReport
from .metrics_service import MetricsService

__all__ = [
    "ExperimentConfig",
    "ExperimentService",
    "Method",
    "MetricsService",
    "PriceReport",
]
