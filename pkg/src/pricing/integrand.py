"""
The damped Fourier integrand and the damping vector it is evaluated at.

The option value is the integral over R^d of

    g(u; R) = (2 pi)^{-d} exp(-rT) Re[ chf(u + iR) P^(u + iR) ],

with chf taken under the spot-shifted model that turns a weighted basket
into the canonical payoff. Everything is accumulated in log space and
exponentiated once.
"""
from typing import Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from src.exceptions import StripViolation
from src.models import ModelSpec, log_phi, strip_contains_X
from src.payoffs import PayoffSpec, log_payoff_hat, strip_contains_P


class DampingVector(BaseModel):
    """Damping vector R with the strip margins recorded at construction"""

    model_config = ConfigDict(frozen=True)

    R: Tuple[float, ...]
    model_margin: float
    payoff_margins: Tuple[float, ...]
    converged: bool = True
    iterations: int = 0
    log_peak: Optional[float] = None

    @classmethod
    def create(
        cls,
        R: Sequence[float],
        model: ModelSpec,
        payoff: PayoffSpec,
        **metadata,
    ) -> "DampingVector":
        """Validate R against both strips and record the margins.

        Raises:
            StripViolation: If R is not strictly inside the intersection
        """
        R = np.asarray(R, dtype=float)
        if R.shape != (model.d,):
            raise ValueError(f"damping vector must have length d={model.d}")
        model_check = strip_contains_X(model, R)
        payoff_check = strip_contains_P(payoff, R)
        if not model_check.contained:
            raise StripViolation(f"R={R.tolist()} outside the model strip (margin {model_check.margin:.3g})")
        if not payoff_check.contained:
            raise StripViolation(f"R={R.tolist()} outside the payoff strip")
        return cls(
            R=tuple(float(r) for r in R),
            model_margin=model_check.margin,
            payoff_margins=tuple(float(m) for m in payoff_check.margins),
            **metadata,
        )

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.R, dtype=float)

    def shifted(self, offset: Sequence[float], model: ModelSpec, payoff: PayoffSpec) -> "DampingVector":
        """R + offset, rejected when it leaves the strip intersection"""
        return DampingVector.create(self.array + np.asarray(offset, dtype=float), model, payoff)

    def to_json(self) -> str:
        return self.model_dump_json(exclude_none=True)

    @classmethod
    def from_json(cls, payload: str) -> "DampingVector":
        return cls.model_validate_json(payload)


def pricing_model(model: ModelSpec, payoff: PayoffSpec) -> ModelSpec:
    """Model whose initial log-prices absorb the basket weights"""
    shift = payoff.log_spot_shift
    if not np.any(shift):
        return model
    return model.with_spot(model.spot_array * np.exp(shift))


def log_peak(model: ModelSpec, payoff: PayoffSpec, R) -> float:
    """log g(0; R), the objective of the damping optimizer"""
    R = np.asarray(R, dtype=float)
    shifted = pricing_model(model, payoff)
    z = 1j * R
    value = (
        -model.d * np.log(2.0 * np.pi)
        - model.rate * model.maturity
        + np.real(1j * (z @ shifted.x0) + log_phi(shifted, z))
        + np.real(log_payoff_hat(payoff, z))
    )
    return float(value)


class FourierIntegrand:
    """Vectorized integrand u -> g(u; R) for one (model, payoff, R) triple"""

    def __init__(self, model: ModelSpec, payoff: PayoffSpec, damping: DampingVector | Sequence[float]):
        if not isinstance(damping, DampingVector):
            damping = DampingVector.create(damping, model, payoff)
        if model.d != payoff.d:
            raise ValueError(f"model has d={model.d} but payoff has d={payoff.d}")
        self.model = model
        self.payoff = payoff
        self.damping = damping
        self.d = model.d
        self._R = damping.array
        self._shifted = pricing_model(model, payoff)
        self._log_prefactor = -self.d * np.log(2.0 * np.pi) - model.rate * model.maturity
        self.n_evaluations = 0
        self.n_chf_evaluations = 0

    def _log_terms(self, u: np.ndarray) -> np.ndarray:
        z = u + 1j * self._R
        return (
            self._log_prefactor
            + 1j * (z @ self._shifted.x0)
            + log_phi(self._shifted, z)
            + log_payoff_hat(self.payoff, z)
        )

    def __call__(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        scalar = u.ndim == 1
        points = np.atleast_2d(u)
        values = np.exp(self._log_terms(points)).real
        self.n_evaluations += points.shape[0]
        self.n_chf_evaluations += points.shape[0]
        return values[0] if scalar else values

    def peak(self) -> float:
        """g(0; R), the maximum of |g| by the ridge property"""
        return float(np.exp(log_peak(self.model, self.payoff, self._R)))

    def strike_scan(self, strikes: Sequence[float], nodes: np.ndarray, weights: np.ndarray) -> np.ndarray:
        """Prices for several strikes from one pass of chf evaluations.

        The payoff transform depends on K only through K^{1 - i sum(z)}, so
        the chf and Gamma factors are computed once on the quadrature nodes.

        Args:
            strikes: Strikes sharing this integrand's damping vector
            nodes: Quadrature nodes, shape (n, d)
            weights: Quadrature weights, shape (n,)
        """
        nodes = np.atleast_2d(np.asarray(nodes, dtype=float))
        z = nodes + 1j * self._R
        shared = self._log_terms(nodes) - (1.0 - 1j * z.sum(axis=-1)) * np.log(self.payoff.strike)
        self.n_chf_evaluations += nodes.shape[0]
        prices = []
        for strike in strikes:
            log_values = shared + (1.0 - 1j * z.sum(axis=-1)) * np.log(strike)
            prices.append(float(np.exp(log_values).real @ weights))
        return np.asarray(prices)


def g(u, R, model: ModelSpec, payoff: PayoffSpec):
    """Functional form of the integrand"""
    return FourierIntegrand(model, payoff, R)(u)
