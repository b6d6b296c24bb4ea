"""
Abstract interface implemented by every family of joint log-price dynamics.
Defines the contract the characteristic-function layer relies on.
"""
from abc import ABC, abstractmethod
from typing import Optional

import numpy as np

from .base import ModelSpec


class LevyDynamics(ABC):
    """Abstract base class for the terminal log-price law of one family"""

    def __init__(self, model: ModelSpec):
        self.model = model
        self.d = model.d
        self.maturity = model.maturity
        self.rate = model.rate

    @abstractmethod
    def martingale_correction(self) -> np.ndarray:
        """Drift adjustment mu used inside the chf"""
        pass

    @abstractmethod
    def log_phi(self, z: np.ndarray) -> np.ndarray:
        """Log of the chf without the exp(i<z, X_0>) factor.

        Args:
            z: Complex array of shape (..., d)

        Returns:
            Complex array of shape (...)
        """
        pass

    @abstractmethod
    def strip_margin(self, R: np.ndarray) -> np.ndarray:
        """Constraint value defining the strip; positive strictly inside.

        Args:
            R: Real array of shape (..., d)
        """
        pass

    def strip_center(self) -> Optional[np.ndarray]:
        """Point maximizing the strip margin, None when the strip is R^d"""
        return None

    @abstractmethod
    def sample_increments(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """Draw n samples of X_T - X_0, shape (n, d)"""
        pass

    def _drift(self) -> np.ndarray:
        return (self.rate + self.martingale_correction()) * self.maturity


def bilinear(z: np.ndarray, matrix: np.ndarray, w: np.ndarray | None = None) -> np.ndarray:
    """Unconjugated form <z, M w> along the last axis"""
    w = z if w is None else w
    return np.einsum("...i,ij,...j->...", z, matrix, w)
