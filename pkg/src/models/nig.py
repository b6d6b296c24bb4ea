"""Multivariate normal inverse Gaussian with a common IG subordinator."""
import numpy as np

from src.exceptions import DomainError

from .base import ModelSpec, symmetric_factor
from .dynamics import LevyDynamics, bilinear


class NIGDynamics(LevyDynamics):
    """NIG log-prices sharing one inverse Gaussian time change.

    ``nig_drift="martingale"`` uses the correction implied by the joint chf,
    which makes exp(X^j) a martingale in any dimension. ``"marginal"`` uses the
    coordinate-wise formula that ignores the other components of beta; both
    coincide for d = 1.
    """

    def __init__(self, model: ModelSpec):
        super().__init__(model)
        self.alpha = float(model.alpha)
        self.beta = model.beta_array
        self.delta = float(model.delta)
        self.delta_matrix = model.delta_matrix_array
        self.drift_convention = model.nig_drift
        self.gamma = np.sqrt(self.alpha ** 2 - self.beta @ self.delta_matrix @ self.beta)

    def martingale_correction(self) -> np.ndarray:
        alpha2 = self.alpha ** 2
        if self.drift_convention == "marginal":
            inner = alpha2 - self.beta ** 2
            shifted = alpha2 - (self.beta + 1.0) ** 2
        else:
            shifted_beta = self.beta + np.eye(self.d)
            inner = np.full(self.d, self.gamma ** 2)
            shifted = alpha2 - bilinear(shifted_beta, self.delta_matrix)
        if np.any(inner < 0) or np.any(shifted < 0):
            raise DomainError("NIG martingale correction undefined: negative square-root argument")
        return -self.delta * (np.sqrt(inner) - np.sqrt(shifted))

    def log_phi(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        shifted = self.beta + 1j * z
        root = np.sqrt(self.alpha ** 2 - bilinear(shifted, self.delta_matrix))
        drift = self._drift()
        return 1j * (z @ drift) + self.delta * self.maturity * (self.gamma - root)

    def strip_margin(self, R: np.ndarray) -> np.ndarray:
        R = np.asarray(R, dtype=float)
        offset = self.beta - R
        return self.alpha ** 2 - bilinear(offset, self.delta_matrix)

    def strip_center(self) -> np.ndarray:
        return self.beta.copy()

    def sample_subordinator(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """IG time change with mean delta T / gamma and shape (delta T)^2"""
        scale = self.delta * self.maturity
        return rng.wald(mean=scale / self.gamma, scale=scale ** 2, size=n)

    def sample_increments(self, rng: np.random.Generator, n: int) -> np.ndarray:
        ig = self.sample_subordinator(rng, n)[:, None]
        normals = rng.standard_normal((n, self.d)) @ symmetric_factor(self.delta_matrix).T
        return self._drift() + (self.delta_matrix @ self.beta) * ig + np.sqrt(ig) * normals
