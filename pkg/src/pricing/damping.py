"""
Optimal damping: choose R in the strip intersection minimizing g(0; R).

The objective is log g(0; R), minimized by a log-barrier Newton method over
the strip margins. Gradients and Hessians are central finite differences and
every trial point of the backtracking line search must stay strictly inside
the strips, so the objective is never evaluated where it does not exist.
"""
import warnings
from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg
import structlog
from pydantic import BaseModel, Field

from src.config.settings import settings
from src.exceptions import InfeasibleError, NonConvergenceWarning, PricingError
from src.models import ModelSpec, get_dynamics
from src.payoffs import PayoffFamily, PayoffSpec, payoff_margins

from .integrand import DampingVector, log_peak

logger = structlog.get_logger(__name__)

_GRADIENT_STEP = 1e-6
_HESSIAN_STEP = 1e-4
_MAX_BISECTIONS = 60


class DampingOptions(BaseModel):
    """Optimizer options"""
    tol: float = Field(default_factory=lambda: settings.damping_tol, gt=0)
    max_iter: int = Field(default_factory=lambda: settings.damping_max_iter, ge=1)
    interior_margin: float = Field(default_factory=lambda: settings.damping_interior_margin, gt=0)
    start: Optional[Tuple[float, ...]] = None
    extra_starts: List[Tuple[float, ...]] = Field(default_factory=list)
    barrier_weight: float = Field(default=1.0, gt=0)
    barrier_shrink: float = Field(default=10.0, gt=1)
    armijo: float = Field(default=0.25, gt=0, lt=0.5)
    backtrack: float = Field(default=0.5, gt=0, lt=1)


def default_start(payoff: PayoffSpec) -> np.ndarray:
    """Vector of ones for the basket put, -(2/d + 1) for the call on min"""
    d = payoff.d
    if payoff.family is PayoffFamily.BASKET_PUT:
        return np.ones(d)
    return np.full(d, -2.0 / d - 1.0)


def _small_feasible_point(payoff: PayoffSpec) -> np.ndarray:
    d = payoff.d
    if payoff.family is PayoffFamily.BASKET_PUT:
        return np.full(d, 1e-2)
    return np.full(d, -1.1 / d)


class DampingProblem:
    """Objective, margins and domain indicator for one (model, payoff) pair"""

    def __init__(self, model: ModelSpec, payoff: PayoffSpec, options: DampingOptions):
        self.model = model
        self.payoff = payoff
        self.options = options
        self.dynamics = get_dynamics(model)
        self.n_objective_evaluations = 0

    def margins(self, R: np.ndarray) -> np.ndarray:
        model_margin = float(self.dynamics.strip_margin(R))
        payoff_part = payoff_margins(self.payoff, R)
        if np.isinf(model_margin):
            return payoff_part
        return np.concatenate([[model_margin], payoff_part])

    def is_interior(self, R: np.ndarray) -> bool:
        """Domain indicator: every margin at least the interior margin"""
        return bool(np.all(self.margins(R) >= self.options.interior_margin))

    def objective(self, R: np.ndarray) -> float:
        """log g(0; R), +inf outside the strips"""
        if not np.all(self.margins(R) > 0):
            return np.inf
        self.n_objective_evaluations += 1
        try:
            value = log_peak(self.model, self.payoff, R)
        except (PricingError, FloatingPointError):
            return np.inf
        return value if np.isfinite(value) else np.inf

    def barrier(self, R: np.ndarray, weight: float) -> float:
        margins = self.margins(R)
        if not np.all(margins > 0):
            return np.inf
        return self.objective(R) - weight * float(np.sum(np.log(margins)))

    def feasible_start(self, start: Sequence[float]) -> np.ndarray:
        """First strictly interior point on segments toward the strip centers.

        Raises:
            InfeasibleError: If no candidate is strictly interior
        """
        start = np.asarray(start, dtype=float)
        anchors = [start, _small_feasible_point(self.payoff)]
        center = self.dynamics.strip_center()
        for anchor in anchors:
            if self.is_interior(anchor) and np.isfinite(self.objective(anchor)):
                return anchor
            if center is None:
                continue
            fraction = 1.0
            for _ in range(_MAX_BISECTIONS):
                fraction *= 0.5
                candidate = center + fraction * (anchor - center)
                if self.is_interior(candidate) and np.isfinite(self.objective(candidate)):
                    logger.debug("damping_start_shrunk", start=anchor.tolist(), fraction=fraction)
                    return candidate
        raise InfeasibleError(
            f"no strictly feasible damping vector found for {self.model.family.value} "
            f"{self.payoff.family.value}"
        )


def _steps(R: np.ndarray, base: float) -> np.ndarray:
    return base * (1.0 + np.abs(R))


def _gradient(fn, R: np.ndarray, base: float = _GRADIENT_STEP) -> np.ndarray:
    h = _steps(R, base)
    grad = np.empty_like(R)
    for i in range(R.size):
        step = np.zeros_like(R)
        step[i] = h[i]
        for _ in range(8):
            forward, backward = fn(R + step), fn(R - step)
            if np.isfinite(forward) and np.isfinite(backward):
                break
            step[i] *= 0.1
        grad[i] = (forward - backward) / (2.0 * step[i])
    return grad


def _hessian(fn, R: np.ndarray, center: float, base: float = _HESSIAN_STEP) -> np.ndarray:
    d = R.size
    for _ in range(8):
        h = _steps(R, base)
        hess = np.empty((d, d))
        for i in range(d):
            ei = np.zeros(d)
            ei[i] = h[i]
            hess[i, i] = (fn(R + ei) - 2.0 * center + fn(R - ei)) / h[i] ** 2
            for j in range(i):
                ej = np.zeros(d)
                ej[j] = h[j]
                hess[i, j] = hess[j, i] = (
                    fn(R + ei + ej) - fn(R + ei - ej) - fn(R - ei + ej) + fn(R - ei - ej)
                ) / (4.0 * h[i] * h[j])
        if np.all(np.isfinite(hess)):
            return hess
        base *= 0.1
    return hess


def _newton_direction(grad: np.ndarray, hess: np.ndarray) -> np.ndarray:
    hess = 0.5 * (hess + hess.T)
    try:
        factor = scipy.linalg.cho_factor(hess)
        return -scipy.linalg.cho_solve(factor, grad)
    except (np.linalg.LinAlgError, ValueError):
        eigvals, eigvecs = np.linalg.eigh(hess)
        floor = 1e-8 * max(1.0, np.abs(eigvals).max())
        eigvals = np.maximum(np.abs(eigvals), floor)
        return -(eigvecs @ ((eigvecs.T @ grad) / eigvals))


class _BarrierRun:
    """One log-barrier Newton run from a strictly feasible start"""

    def __init__(self, problem: DampingProblem):
        self.problem = problem
        self.options = problem.options
        self.iterations = 0
        self.converged = False

    def _line_search(self, R, weight, value, grad, direction) -> float:
        step = 1.0
        slope = float(grad @ direction)
        while step > 1e-14:
            trial = R + step * direction
            if self.problem.is_interior(trial):
                trial_value = self.problem.barrier(trial, weight)
                if trial_value <= value + self.options.armijo * step * slope:
                    return step
            step *= self.options.backtrack
        return 0.0

    def _centering(self, R: np.ndarray, weight: float) -> np.ndarray:
        fn = lambda x: self.problem.barrier(x, weight)
        tol = self.options.tol
        while self.iterations < self.options.max_iter:
            value = fn(R)
            grad = _gradient(fn, R)
            direction = _newton_direction(grad, _hessian(fn, R, value))
            decrement2 = -float(grad @ direction)
            if decrement2 < 0:
                direction, decrement2 = -grad, float(grad @ grad)
            if 0.5 * decrement2 <= tol ** 2:
                return R
            step = self._line_search(R, weight, value, grad, direction)
            self.iterations += 1
            if step == 0.0:
                return R
            move = step * direction
            R = R + move
            logger.debug("damping_newton_step", R=R.tolist(), weight=weight, step=step)
            if np.max(np.abs(move)) <= tol * (1.0 + np.max(np.abs(R))):
                return R
        return R

    def run(self, start: np.ndarray) -> np.ndarray:
        R = start
        weight = self.options.barrier_weight
        n_constraints = self.problem.margins(R).size
        while True:
            R = self._centering(R, weight)
            if self.iterations >= self.options.max_iter:
                return R
            if n_constraints * weight < self.options.tol:
                self.converged = True
                return R
            weight /= self.options.barrier_shrink


def optimal_damping(
    model: ModelSpec,
    payoff: PayoffSpec,
    options: Optional[DampingOptions] = None,
) -> DampingVector:
    """Damping vector approximately minimizing the integrand peak g(0; R).

    Args:
        model: Model specification
        payoff: Payoff specification of the same dimension
        options: Optimizer options; defaults come from settings

    Returns:
        DampingVector with ``converged=False`` if the iteration cap was hit

    Raises:
        InfeasibleError: If no strictly feasible start exists
    """
    options = options or DampingOptions()
    problem = DampingProblem(model, payoff, options)
    starts = [options.start if options.start is not None else default_start(payoff)]
    starts.extend(options.extra_starts)

    candidates = []
    for start in starts:
        run = _BarrierRun(problem)
        R = run.run(problem.feasible_start(start))
        candidates.append((problem.objective(R), float(np.linalg.norm(R)), R, run))

    value, _, R, run = min(candidates, key=lambda item: (round(item[0], 12), item[1]))

    if not run.converged:
        warnings.warn(
            f"damping optimizer stopped after {run.iterations} iterations",
            NonConvergenceWarning,
            stacklevel=2,
        )
        logger.warning("damping_not_converged", iterations=run.iterations, R=R.tolist())

    logger.info(
        "damping_optimized",
        model=model.family.value,
        payoff=payoff.family.value,
        R=[round(float(r), 4) for r in R],
        log_peak=value,
        iterations=run.iterations,
        objective_evaluations=problem.n_objective_evaluations,
    )
    return DampingVector.create(
        R, model, payoff,
        converged=run.converged,
        iterations=run.iterations,
        log_peak=value,
    )
