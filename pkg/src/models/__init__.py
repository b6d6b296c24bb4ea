"""Model specifications and characteristic functions"""
from .base import ModelFamily, ModelSpec, symmetric_factor
from .characteristic import (
    StripCheck,
    chf,
    get_dynamics,
    log_chf,
    log_phi,
    marginal_cumulants,
    martingale_correction,
    phi,
    strip_contains_X,
)
from .dynamics import LevyDynamics

__all__ = [
    "ModelFamily",
    "ModelSpec",
    "LevyDynamics",
    "StripCheck",
    "chf",
    "phi",
    "log_chf",
    "log_phi",
    "get_dynamics",
    "marginal_cumulants",
    "martingale_correction",
    "strip_contains_X",
    "symmetric_factor",
]
