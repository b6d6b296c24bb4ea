"""
Market/model specification shared by every pricing method.

A ``ModelSpec`` is immutable after construction and serializes to the JSON
object ``{family, d, spot, rate, maturity, <family parameters>}`` with
matrices as row-major arrays of arrays.
"""
from enum import Enum
from typing import Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.config.settings import settings


Vector = Tuple[float, ...]
Matrix = Tuple[Tuple[float, ...], ...]

_SYMMETRY_TOL = 1e-10
_PSD_TOL = 1e-10
_DET_TOL = 1e-8


class ModelFamily(str, Enum):
    """Supported joint dynamics for the log-prices"""
    GBM = "GBM"
    VG = "VG"
    NIG = "NIG"


class ModelSpec(BaseModel):
    """Model parameters plus spot, rate and maturity"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    family: ModelFamily
    d: int = Field(ge=1)
    spot: Vector
    rate: float = 0.0
    maturity: float = Field(gt=0)

    # GBM and VG
    sigma: Optional[Vector] = None
    # GBM
    correlation: Optional[Matrix] = None
    # VG
    theta: Optional[Vector] = None
    nu: Optional[float] = None
    # NIG
    alpha: Optional[float] = None
    beta: Optional[Vector] = None
    delta: Optional[float] = None
    delta_matrix: Optional[Matrix] = None
    nig_drift: Literal["martingale", "marginal"] = Field(default_factory=lambda: settings.nig_drift)

    @model_validator(mode="before")
    @classmethod
    def _fill_dimension(cls, data):
        if isinstance(data, dict) and data.get("d") is None and data.get("spot") is not None:
            data = {**data, "d": len(data["spot"])}
        return data

    @model_validator(mode="after")
    def _check_invariants(self) -> "ModelSpec":
        d = self.d
        spot = np.asarray(self.spot, dtype=float)
        if spot.shape != (d,):
            raise ValueError(f"spot must have length d={d}")
        if not np.all(spot > 0):
            raise ValueError("spot prices must be positive")

        if self.family is ModelFamily.GBM:
            self._check_sigma()
            if self.correlation is not None:
                _check_correlation(np.asarray(self.correlation, dtype=float), d)
        elif self.family is ModelFamily.VG:
            self._check_sigma()
            if self.theta is None or len(self.theta) != d:
                raise ValueError(f"VG needs theta of length d={d}")
            if self.nu is None or self.nu <= 0:
                raise ValueError("VG needs nu > 0")
        else:
            if self.alpha is None or self.alpha <= 0:
                raise ValueError("NIG needs alpha > 0")
            if self.delta is None or self.delta <= 0:
                raise ValueError("NIG needs delta > 0")
            if self.beta is None or len(self.beta) != d:
                raise ValueError(f"NIG needs beta of length d={d}")
            dm = self.delta_matrix_array
            if dm.shape != (d, d) or not np.allclose(dm, dm.T, atol=_SYMMETRY_TOL):
                raise ValueError("delta_matrix must be a symmetric d x d matrix")
            if np.linalg.eigvalsh(dm).min() <= 0:
                raise ValueError("delta_matrix must be positive definite")
            if abs(np.linalg.det(dm) - 1.0) > _DET_TOL:
                raise ValueError("delta_matrix must have unit determinant")
            beta = self.beta_array
            if self.alpha ** 2 <= beta @ dm @ beta:
                raise ValueError("NIG needs alpha^2 > beta' Delta beta")
        return self

    def _check_sigma(self) -> None:
        if self.sigma is None or len(self.sigma) != self.d:
            raise ValueError(f"{self.family.value} needs sigma of length d={self.d}")
        if not all(s > 0 for s in self.sigma):
            raise ValueError("sigma entries must be positive")

    # ------------------------------------------------------------------
    # numpy views
    # ------------------------------------------------------------------

    @property
    def spot_array(self) -> np.ndarray:
        return np.asarray(self.spot, dtype=float)

    @property
    def x0(self) -> np.ndarray:
        """Initial log-prices X_0"""
        return np.log(self.spot_array)

    @property
    def sigma_array(self) -> np.ndarray:
        return np.asarray(self.sigma, dtype=float)

    @property
    def theta_array(self) -> np.ndarray:
        return np.asarray(self.theta, dtype=float)

    @property
    def beta_array(self) -> np.ndarray:
        return np.asarray(self.beta, dtype=float)

    @property
    def correlation_array(self) -> np.ndarray:
        if self.correlation is None:
            return np.eye(self.d)
        return np.asarray(self.correlation, dtype=float)

    @property
    def delta_matrix_array(self) -> np.ndarray:
        if self.delta_matrix is None:
            return np.eye(self.d)
        return np.asarray(self.delta_matrix, dtype=float)

    @property
    def covariance(self) -> np.ndarray:
        """Sigma; diagonal sigma^2 for VG, rho_ij sigma_i sigma_j for GBM"""
        if self.family is ModelFamily.GBM:
            s = self.sigma_array
            return self.correlation_array * np.outer(s, s)
        if self.family is ModelFamily.VG:
            return np.diag(self.sigma_array ** 2)
        raise AttributeError("NIG has no covariance parameter; use delta_matrix")

    def with_spot(self, spot) -> "ModelSpec":
        """Copy with replaced spot vector"""
        return self.model_copy(update={"spot": tuple(float(s) for s in spot)})

    # ------------------------------------------------------------------
    # JSON
    # ------------------------------------------------------------------

    def to_json(self) -> str:
        return self.model_dump_json(exclude_none=True)

    @classmethod
    def from_json(cls, payload: str) -> "ModelSpec":
        return cls.model_validate_json(payload)


def _check_correlation(corr: np.ndarray, d: int) -> None:
    if corr.shape != (d, d):
        raise ValueError(f"correlation must be {d} x {d}")
    if not np.allclose(corr, corr.T, atol=_SYMMETRY_TOL):
        raise ValueError("correlation must be symmetric")
    if not np.allclose(np.diag(corr), 1.0, atol=_SYMMETRY_TOL):
        raise ValueError("correlation must have a unit diagonal")
    try:
        symmetric_factor(corr)
    except np.linalg.LinAlgError as exc:
        raise ValueError("correlation must be positive semidefinite") from exc


def symmetric_factor(matrix: np.ndarray) -> np.ndarray:
    """Return A with A A^T = matrix for a symmetric positive semidefinite matrix.

    Cholesky is tried first; semidefinite matrices fall back to an
    eigen-decomposition with clipped round-off eigenvalues.
    """
    try:
        return np.linalg.cholesky(matrix)
    except np.linalg.LinAlgError:
        eigvals, eigvecs = np.linalg.eigh(matrix)
        if eigvals.min() < -_PSD_TOL * max(1.0, abs(eigvals.max())):
            raise
        return eigvecs * np.sqrt(np.clip(eigvals, 0.0, None))
