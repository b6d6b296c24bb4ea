"""Damped Fourier integrand and optimal damping"""
from .damping import DampingOptions, DampingProblem, default_start, optimal_damping
from .integrand import DampingVector, FourierIntegrand, g, log_peak, pricing_model

__all__ = [
    "DampingOptions",
    "DampingProblem",
    "DampingVector",
    "FourierIntegrand",
    "default_start",
    "g",
    "log_peak",
    "optimal_damping",
    "pricing_model",
]
