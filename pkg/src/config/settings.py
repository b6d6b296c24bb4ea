"""Application settings using Pydantic"""
from pathlib import Path
from typing import Literal, Optional

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings using Pydantic"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore"
    )

    # Application
    app_name: str = "Fourier Basket Pricer"
    app_version: str = "1.0.0"

    # Logging
    log_level: str = "INFO"
    log_format: Literal["json", "console"] = "console"

    # Payoff transforms
    transform_exponent_cap: float = 700.0  # Re log P^ above this is an overflow

    # Quadrature
    max_rule_nodes: int = 512
    max_tensor_evaluations: int = 50_000_000
    evaluation_chunk_size: int = 65_536

    # Damping optimizer
    damping_tol: float = 1e-6
    damping_max_iter: int = 500
    damping_interior_margin: float = 1e-6

    # Monte Carlo
    mc_samples: int = 1_000_000
    mc_batch_size: int = 262_144
    mc_workers: int = 4
    mc_seed: int = 20240601

    # COS comparator
    cos_terms: int = 128
    cos_dct_terms: int = 1000
    cos_truncation_width: float = 10.0

    # Experiment runner
    max_parallel_experiments: int = 1
    metrics_file: Optional[Path] = None

    # NIG drift convention used when a model omits it
    nig_drift: Literal["martingale", "marginal"] = "martingale"

    # Sample count below which MC batches run on one thread
    mc_min_parallel_samples: int = Field(default=100_000, ge=1)


# Global settings instance
settings = Settings()
