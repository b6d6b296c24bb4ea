"""Multivariate variance gamma with a common Gamma subordinator."""
import numpy as np

from src.exceptions import BranchError, DomainError

from .base import ModelSpec
from .dynamics import LevyDynamics, bilinear


class VarianceGammaDynamics(LevyDynamics):
    """VG log-prices sharing one Gamma time change"""

    def __init__(self, model: ModelSpec):
        super().__init__(model)
        self.sigma = model.sigma_array
        self.theta = model.theta_array
        self.nu = float(model.nu)
        self.covariance = model.covariance

    def martingale_correction(self) -> np.ndarray:
        arg = 1.0 - 0.5 * self.sigma ** 2 * self.nu - self.theta * self.nu
        if np.any(arg <= 0):
            raise DomainError(
                f"VG martingale correction undefined: log argument {arg.min():.6g} <= 0"
            )
        return np.log(arg) / self.nu

    def log_phi(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        base = 1.0 - 1j * self.nu * (z @ self.theta) + 0.5 * self.nu * bilinear(z, self.covariance)
        # Re base = strip margin + nu u'Su/2, positive everywhere inside the strip
        if np.any(base.real <= 0):
            raise BranchError("VG base leaves the right half-plane; damping is invalid")
        drift = self._drift()
        return 1j * (z @ drift) - (self.maturity / self.nu) * np.log(base)

    def strip_margin(self, R: np.ndarray) -> np.ndarray:
        R = np.asarray(R, dtype=float)
        return 1.0 + self.nu * (R @ self.theta) - 0.5 * self.nu * bilinear(R, self.covariance)

    def strip_center(self) -> np.ndarray:
        return self.theta / self.sigma ** 2

    def sample_subordinator(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """Gamma time change with mean T and variance nu T"""
        return rng.gamma(shape=self.maturity / self.nu, scale=self.nu, size=n)

    def sample_increments(self, rng: np.random.Generator, n: int) -> np.ndarray:
        gamma = self.sample_subordinator(rng, n)[:, None]
        normals = rng.standard_normal((n, self.d))
        return self._drift() + self.theta * gamma + self.sigma * np.sqrt(gamma) * normals
