"""Multivariate geometric Brownian motion."""
import numpy as np

from .base import ModelSpec, symmetric_factor
from .dynamics import LevyDynamics, bilinear


class GBMDynamics(LevyDynamics):
    """Correlated Brownian log-prices; the strip is all of R^d"""

    def __init__(self, model: ModelSpec):
        super().__init__(model)
        self.covariance = model.covariance

    def martingale_correction(self) -> np.ndarray:
        return -0.5 * np.diag(self.covariance)

    def log_phi(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        drift = self._drift()
        return 1j * (z @ drift) - 0.5 * self.maturity * bilinear(z, self.covariance)

    def strip_margin(self, R: np.ndarray) -> np.ndarray:
        R = np.asarray(R, dtype=float)
        return np.full(R.shape[:-1], np.inf)

    def sample_increments(self, rng: np.random.Generator, n: int) -> np.ndarray:
        factor = symmetric_factor(self.covariance)
        normals = rng.standard_normal((n, self.d))
        return self._drift() + np.sqrt(self.maturity) * normals @ factor.T
