"""
Characteristic functions of X_T, strip tests and marginal cumulants.

Sign convention: chf(z) = E[exp(i <z, X_T>)] for complex z = u + iR, so the
damping vector R is the imaginary part of the argument.
"""
import math
from typing import NamedTuple, Tuple

import numpy as np

from src.exceptions import NumericalError, StripViolation

from .base import ModelFamily, ModelSpec
from .dynamics import LevyDynamics
from .gbm import GBMDynamics
from .nig import NIGDynamics
from .variance_gamma import VarianceGammaDynamics


_DYNAMICS = {
    ModelFamily.GBM: GBMDynamics,
    ModelFamily.VG: VarianceGammaDynamics,
    ModelFamily.NIG: NIGDynamics,
}

# Real central differences for c1 and c2. Fourth differences on the real line
# lose most digits to round-off, so c4 uses the stencil on a circle of radius
# at most _CIRCLE_RADIUS in the complex s-plane.
_LOW_ORDER_STEP = 1e-3
_CIRCLE_RADIUS = 1.0
_CIRCLE_POINTS = 32
_CUMULANT_RTOL = 1e-5
_GBM_CHECK_TOL = 1e-6


class StripCheck(NamedTuple):
    """Strip membership with the signed constraint value"""
    contained: bool
    margin: float


def get_dynamics(model: ModelSpec) -> LevyDynamics:
    """Build the dynamics object for a model family"""
    return _DYNAMICS[model.family](model)


def martingale_correction(model: ModelSpec) -> np.ndarray:
    """Drift adjustment mu making exp(-rT) S_T^j a martingale"""
    return get_dynamics(model).martingale_correction()


def strip_contains_X(model: ModelSpec, R) -> StripCheck:
    """Whether R lies strictly inside the strip of analyticity of the chf"""
    R = np.asarray(R, dtype=float)
    margin = float(get_dynamics(model).strip_margin(R))
    return StripCheck(bool(margin > 0), margin)


def _check_strip(dynamics: LevyDynamics, z: np.ndarray) -> None:
    margins = dynamics.strip_margin(z.imag)
    if np.any(~(margins > 0)):
        raise StripViolation(
            f"Im[z] outside the {dynamics.model.family.value} strip "
            f"(min margin {np.min(margins):.6g})"
        )


def log_phi(model: ModelSpec, z) -> np.ndarray:
    """Log of the factorized chf phi(z), i.e. without exp(i<z, X_0>)"""
    dynamics = get_dynamics(model)
    z = np.asarray(z, dtype=complex)
    _check_strip(dynamics, z)
    return dynamics.log_phi(z)


def log_chf(model: ModelSpec, z) -> np.ndarray:
    """Log of chf(z) including the initial log-price factor"""
    z = np.asarray(z, dtype=complex)
    return 1j * (z @ model.x0) + log_phi(model, z)


def phi(model: ModelSpec, z) -> np.ndarray:
    """Factorized chf; reused across strikes and spots"""
    return np.exp(log_phi(model, z))


def chf(model: ModelSpec, z) -> np.ndarray:
    """E[exp(i <z, X_T>)] for z of shape (d,) or (n, d)"""
    return np.exp(log_chf(model, z))


def _centered_cgf(dynamics: LevyDynamics, i: int, s: np.ndarray) -> np.ndarray:
    """log E[exp(s (X_T^i - X_0^i))] for real s"""
    z = np.zeros((s.size, dynamics.d), dtype=complex)
    z[:, i] = -1j * s
    return dynamics.log_phi(z).real


def _stencil_derivatives(dynamics: LevyDynamics, i: int, h: float, order: int) -> float:
    km1, kp1 = _centered_cgf(dynamics, i, np.array([-h, h]))
    if order == 1:
        return (kp1 - km1) / (2 * h)
    return (kp1 + km1) / h ** 2  # K(0) = 0


def _singularity_distance(dynamics: LevyDynamics, i: int) -> float:
    """Distance from s = 0 to the nearest real zero of the strip margin along e_i"""
    e = np.zeros(dynamics.d)
    e[i] = 1.0
    m0, mp, mm = (float(dynamics.strip_margin(s * e)) for s in (0.0, 1.0, -1.0))
    if not np.isfinite(m0):
        return np.inf
    # both VG and NIG margins are quadratic along a line
    roots = np.roots([0.5 * (mp + mm) - m0, 0.5 * (mp - mm), m0])
    real_roots = roots[np.abs(roots.imag) < 1e-12].real
    return float(np.min(np.abs(real_roots))) if real_roots.size else np.inf


def _circle_cumulant(dynamics: LevyDynamics, i: int, order: int, radius: float, n: int) -> float:
    """order! / radius^order times the mean of K(radius w) w^-order over n roots of unity"""
    w = np.exp(2j * np.pi * np.arange(n) / n)
    z = np.zeros((n, dynamics.d), dtype=complex)
    z[:, i] = -1j * radius * w
    values = dynamics.log_phi(z)
    return float(np.real(np.mean(values * w ** (-order)))) * math.factorial(order) / radius ** order


def _fourth_cumulant(dynamics: LevyDynamics, i: int, scale: float) -> float:
    radius = min(_CIRCLE_RADIUS, 0.5 * _singularity_distance(dynamics, i))
    coarse = _circle_cumulant(dynamics, i, 4, radius, _CIRCLE_POINTS)
    fine = _circle_cumulant(dynamics, i, 4, radius, 2 * _CIRCLE_POINTS)
    if abs(coarse - fine) > _CUMULANT_RTOL * max(abs(fine), scale):
        raise NumericalError(f"fourth cumulant unstable for coordinate {i}: {coarse!r} vs {fine!r}")
    return fine


def _richardson(dynamics: LevyDynamics, i: int, h: float, order: int, scale: float) -> float:
    coarse = _stencil_derivatives(dynamics, i, h, order)
    fine = _stencil_derivatives(dynamics, i, h / 2, order)
    if abs(coarse - fine) > _CUMULANT_RTOL * max(abs(fine), scale):
        raise NumericalError(
            f"cumulant of order {order} unstable for coordinate {i}: {coarse!r} vs {fine!r}"
        )
    return (4 * fine - coarse) / 3


def marginal_cumulants(model: ModelSpec, i: int) -> Tuple[float, float, float]:
    """Cumulants (c1, c2, c4) of X_T^i from finite differences of its log-chf.

    c1 includes X_0^i. For GBM the result is checked against the closed form.
    """
    if not 0 <= i < model.d:
        raise IndexError(f"coordinate {i} out of range for d={model.d}")
    dynamics = get_dynamics(model)

    c2 = _richardson(dynamics, i, _LOW_ORDER_STEP, 2, scale=0.0)
    c1 = _richardson(dynamics, i, _LOW_ORDER_STEP, 1, scale=np.sqrt(c2))
    c4 = _fourth_cumulant(dynamics, i, scale=c2 ** 2)
    c1 += model.x0[i]

    if model.family is ModelFamily.GBM:
        sigma2 = model.sigma_array[i] ** 2
        exact = (
            model.x0[i] + (model.rate - 0.5 * sigma2) * model.maturity,
            sigma2 * model.maturity,
            0.0,
        )
        if max(abs(a - b) for a, b in zip((c1, c2, c4), exact)) > _GBM_CHECK_TOL:
            raise NumericalError(f"GBM cumulants disagree with closed form for coordinate {i}")
        return exact
    return float(c1), float(c2), float(c4)
