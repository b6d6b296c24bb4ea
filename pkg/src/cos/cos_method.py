"""
Fourier-cosine (COS) pricing in one and two dimensions.

The density of X_T on the box [a, b]^d is expanded in cosines; its
coefficients come straight from the characteristic function, the payoff
coefficients from a type-II DCT of midpoint samples on a Q^d grid. The first
term of every cosine sum carries weight 1/2.
"""
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import structlog
from pydantic import BaseModel, Field
from scipy.fft import dct, dctn

from src.config.settings import settings
from src.exceptions import ConfigError
from src.models import ModelSpec, log_chf, marginal_cumulants
from src.payoffs import PayoffSpec, payoff

logger = structlog.get_logger(__name__)


class CosConfig(BaseModel):
    """Fourier modes per dimension, DCT terms per dimension and truncation width"""
    n_cos: int = Field(default_factory=lambda: settings.cos_terms, ge=1)
    q: int = Field(default_factory=lambda: settings.cos_dct_terms, ge=1)
    L: float = Field(default_factory=lambda: settings.cos_truncation_width, gt=0)


@dataclass(frozen=True)
class CosResult:
    estimate: float
    n_cf: int
    a: float
    b: float


def truncation_range(model: ModelSpec, config: CosConfig) -> Tuple[float, float]:
    """Common interval [a, b] from the marginal cumulants of every coordinate"""
    lows, highs = [], []
    for i in range(model.d):
        c1, c2, c4 = marginal_cumulants(model, i)
        width = config.L * math.sqrt(c2 + math.sqrt(max(c4, 0.0)))
        lows.append(c1 - width)
        highs.append(c1 + width)
    return min(lows), max(highs)


def _half_first(n: int) -> np.ndarray:
    weights = np.ones(n)
    weights[0] = 0.5
    return weights


def _density_coefficients(model: ModelSpec, frequencies: np.ndarray, a: float, b: float) -> np.ndarray:
    n = frequencies.size
    if model.d == 1:
        z = frequencies[:, None]
        values = np.exp(log_chf(model, z) - 1j * frequencies * a).real
        return 2.0 / (b - a) * values

    u1, u2 = np.meshgrid(frequencies, frequencies, indexing="ij")
    plus = np.stack([u1, u2], axis=-1).reshape(-1, 2)
    minus = np.stack([u1, -u2], axis=-1).reshape(-1, 2)
    first = np.exp(log_chf(model, plus) - 1j * plus.sum(axis=1) * a).real
    second = np.exp(log_chf(model, minus) - 1j * minus.sum(axis=1) * a).real
    scale = (2.0 / (b - a)) ** 2
    return (scale * 0.5 * (first + second)).reshape(n, n)


def _payoff_coefficients(payoff_spec: PayoffSpec, d: int, n: int, q: int, a: float, b: float) -> np.ndarray:
    step = (b - a) / q
    midpoints = a + (np.arange(q) + 0.5) * step
    if d == 1:
        samples = payoff(payoff_spec, midpoints[:, None])
        return step * dct(samples, type=2)[:n] / 2.0
    x1, x2 = np.meshgrid(midpoints, midpoints, indexing="ij")
    samples = payoff(payoff_spec, np.stack([x1, x2], axis=-1))
    return step ** 2 * dctn(samples, type=2)[:n, :n] / 4.0


def cos_price(model: ModelSpec, payoff_spec: PayoffSpec, config: CosConfig | None = None) -> CosResult:
    """COS price for d in {1, 2} with its chf-evaluation count.

    Raises:
        ConfigError: If d > 2 or fewer DCT terms than Fourier modes
    """
    config = config or CosConfig()
    d = model.d
    if d not in (1, 2):
        raise ConfigError(f"COS is supported for d in (1, 2), got d={d}")
    if config.q < config.n_cos:
        raise ConfigError(f"DCT terms q={config.q} must be at least n_cos={config.n_cos}")

    a, b = truncation_range(model, config)
    frequencies = np.arange(config.n_cos) * np.pi / (b - a)
    density = _density_coefficients(model, frequencies, a, b)
    values = _payoff_coefficients(payoff_spec, d, config.n_cos, config.q, a, b)

    weights = _half_first(config.n_cos)
    if d == 2:
        weights = np.outer(weights, weights)
    estimate = math.exp(-model.rate * model.maturity) * float(np.sum(weights * density * values))
    n_cf = 2 ** (d - 1) * config.n_cos ** d

    logger.debug("cos_priced", d=d, n_cos=config.n_cos, q=config.q, a=a, b=b, estimate=estimate)
    return CosResult(estimate=estimate, n_cf=n_cf, a=a, b=b)


def cos2d_price(model: ModelSpec, payoff_spec: PayoffSpec, config: CosConfig | None = None) -> float:
    """Two-dimensional COS price"""
    if model.d != 2:
        raise ConfigError(f"cos2d_price needs d=2, got d={model.d}")
    return cos_price(model, payoff_spec, config).estimate


def cos1d_price(model: ModelSpec, payoff_spec: PayoffSpec, config: CosConfig | None = None) -> float:
    """Single-asset COS price"""
    if model.d != 1:
        raise ConfigError(f"cos1d_price needs d=1, got d={model.d}")
    return cos_price(model, payoff_spec, config).estimate
