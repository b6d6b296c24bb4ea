"""
Payoffs on log-prices and their generalized Fourier transforms.

Transform convention: P^(z) = integral of exp(-i <z, x>) P(x) dx over R^d,
evaluated on the canonical (unweighted) payoffs. Basket weights are absorbed
by shifting the initial log-prices, see ``PayoffSpec.log_spot_shift``.
"""
from typing import NamedTuple

import numpy as np

from src.config.settings import settings
from src.exceptions import StripViolation, TransformOverflowError

from .base import PayoffFamily, PayoffSpec
from .gamma import log_gamma


class PayoffStripCheck(NamedTuple):
    """Strip membership with one margin per linear constraint"""
    contained: bool
    margins: np.ndarray


def payoff(spec: PayoffSpec, x) -> np.ndarray:
    """Payoff of the weighted option at log-prices x of shape (..., d)"""
    prices = np.exp(np.asarray(x, dtype=float))
    if spec.family is PayoffFamily.BASKET_PUT:
        return np.maximum(spec.strike - prices @ spec.weights_array, 0.0)
    return np.maximum(prices.min(axis=-1) - spec.strike, 0.0)


def payoff_margins(spec: PayoffSpec, R) -> np.ndarray:
    """Constraint values, all positive strictly inside the payoff strip.

    Basket put: R_i. Call on min: -R_i and -1 - sum(R).
    """
    R = np.asarray(R, dtype=float)
    if spec.family is PayoffFamily.BASKET_PUT:
        return R.copy()
    return np.concatenate([-R, [-1.0 - R.sum()]], axis=-1)


def strip_contains_P(spec: PayoffSpec, R) -> PayoffStripCheck:
    """Whether R lies strictly inside the strip of regularity of P^"""
    margins = payoff_margins(spec, R)
    return PayoffStripCheck(bool(np.all(margins > 0)), margins)


def _check_strip(spec: PayoffSpec, z: np.ndarray) -> None:
    R = z.imag
    if spec.family is PayoffFamily.BASKET_PUT:
        inside = np.all(R > 0, axis=-1)
    else:
        inside = np.all(R < 0, axis=-1) & (R.sum(axis=-1) < -1.0)
    if not np.all(inside):
        raise StripViolation(f"Im[z] outside the {spec.family.value} strip")


def log_payoff_hat(spec: PayoffSpec, z, exponent_cap: float | None = None) -> np.ndarray:
    """log P^(z) on the principal branch for z of shape (..., d)"""
    z = np.asarray(z, dtype=complex)
    _check_strip(spec, z)
    total = z.sum(axis=-1)
    log_strike = (1.0 - 1j * total) * np.log(spec.strike)

    if spec.family is PayoffFamily.BASKET_PUT:
        result = (
            log_strike
            + np.sum(log_gamma(-1j * z), axis=-1)
            - log_gamma(-1j * total + 2.0)
        )
    else:
        result = log_strike - np.log(1j * total - 1.0) - np.sum(np.log(1j * z), axis=-1)

    cap = settings.transform_exponent_cap if exponent_cap is None else exponent_cap
    # only the overflow side; a very negative exponent just underflows to zero
    exponent = np.real(result)
    if np.any(exponent > cap):
        raise TransformOverflowError(f"payoff transform exponent {np.max(exponent):.1f} exceeds cap {cap:g}")
    return result


def payoff_hat(spec: PayoffSpec, z, exponent_cap: float | None = None) -> np.ndarray:
    """Generalized Fourier transform of the canonical payoff"""
    return np.exp(log_payoff_hat(spec, z, exponent_cap))
