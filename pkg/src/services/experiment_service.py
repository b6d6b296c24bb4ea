"""
Experiment runner: damping -> method -> report.

An experiment is a model, a payoff, a pricing method with its options and a
damping choice. Configurations come from JSON files (one object or an array)
and may name a registry example instead of spelling out the model.
"""
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Sequence, Tuple

import pandas as pd
import structlog
from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.config.settings import settings
from src.cos import CosConfig, cos_price
from src.exceptions import ConfigError, ExperimentError, PricingError
from src.mc import mc_price
from src.models import ModelSpec
from src.payoffs import PayoffSpec
from src.pricing import DampingOptions, DampingVector, FourierIntegrand, optimal_damping
from src.quadrature import (
    AdaptiveSparseGrid,
    HierarchicalQuadrature,
    RuleKind,
    largest_level_within,
    smolyak_cost,
    tp_cost,
)
from src.repositories.example_repository import ExampleRepository
from src.utils.reporting import convergence_frame

from .metrics_service import MetricsService

logger = structlog.get_logger(__name__)


class Method(str, Enum):
    TP = "TP"
    SM = "SM"
    ASGQ = "ASGQ"
    MC = "MC"
    COS2D = "COS2D"


QUADRATURE_METHODS = {Method.TP, Method.SM, Method.ASGQ}


class MethodOptions(BaseModel):
    """Options for every method; each method reads its own subset"""
    level: Optional[int] = Field(default=None, ge=0)
    budget: Optional[int] = Field(default=None, ge=1)
    threshold: float = Field(default=0.0, ge=0)
    rule: RuleKind = RuleKind.LAGUERRE
    scale: float = Field(default=1.0, gt=0)
    half_space: bool = False
    M: Optional[int] = Field(default=None, ge=2)
    seed: Optional[int] = None
    n_cos: Optional[int] = Field(default=None, ge=1)
    q: Optional[int] = Field(default=None, ge=1)
    L: Optional[float] = Field(default=None, gt=0)


class DampingChoice(BaseModel):
    """optimal, fixed R, or optimal shifted by an offset vector"""
    mode: Literal["optimal", "fixed", "offset"] = "optimal"
    R: Optional[Tuple[float, ...]] = None
    offset: Optional[Tuple[float, ...]] = None
    tol: Optional[float] = None
    max_iter: Optional[int] = None

    @model_validator(mode="after")
    def _check_mode(self) -> "DampingChoice":
        if self.mode == "fixed" and self.R is None:
            raise ValueError("fixed damping needs R")
        if self.mode == "offset" and self.offset is None:
            raise ValueError("offset damping needs an offset vector")
        return self


class ExperimentConfig(BaseModel):
    """One pricing experiment"""

    model_config = ConfigDict(extra="forbid")

    name: Optional[str] = None
    example: Optional[str] = None
    model: ModelSpec
    payoff: PayoffSpec
    method: Method
    options: MethodOptions = Field(default_factory=MethodOptions)
    damping: DampingChoice = Field(default_factory=DampingChoice)
    reference: Optional[float] = None
    reference_error: Optional[float] = None

    @model_validator(mode="before")
    @classmethod
    def _resolve_example(cls, data: Any) -> Any:
        if not isinstance(data, dict) or data.get("example") is None:
            return data
        try:
            example = ExampleRepository().get_by_name(str(data["example"]))
        except KeyError as exc:
            raise ValueError(str(exc)) from None
        data = {**data, "example": str(data["example"])}
        resolved = {
            "model": example.model,
            "payoff": example.payoff,
            "reference": example.reference,
            "reference_error": example.stat_error,
            "name": example.name,
        }
        resolved.update({k: v for k, v in data.items() if v is not None})
        return resolved

    @model_validator(mode="after")
    def _check_consistency(self) -> "ExperimentConfig":
        if self.model.d != self.payoff.d:
            raise ValueError(f"model has d={self.model.d} but payoff has d={self.payoff.d}")
        opts = self.options
        if self.method is Method.ASGQ and opts.level is not None:
            raise ValueError("ASGQ is driven by budget/threshold, not level")
        if self.method in (Method.TP, Method.SM) and opts.level is None and opts.budget is None:
            raise ValueError(f"{self.method.value} needs a level or a budget")
        if self.method is Method.ASGQ and opts.budget is None and opts.threshold <= 0:
            raise ValueError("ASGQ needs a budget or a positive threshold")
        if self.method is Method.COS2D and self.model.d > 2:
            raise ValueError("COS2D supports d <= 2")
        if self.method in (Method.MC, Method.COS2D) and self.damping.mode != "optimal":
            raise ValueError(f"{self.method.value} does not use damping")
        return self

    @property
    def label(self) -> str:
        return self.name or f"{self.model.family.value}-{self.payoff.family.value}-{self.model.d}d"

    @classmethod
    def from_file(cls, path: Path) -> List["ExperimentConfig"]:
        """Load one experiment object or a batch array from JSON"""
        data = json.loads(Path(path).read_text())
        items = data if isinstance(data, list) else [data]
        return [cls(**item) for item in items]


class PriceReport(BaseModel):
    """Outcome of one experiment"""
    name: str
    method: Method
    estimate: float
    reference: Optional[float] = None
    relative_error: Optional[float] = None
    n_points: Optional[int] = None
    n_eval: Optional[int] = None
    n_cf: Optional[int] = None
    M: Optional[int] = None
    stat_error: Optional[float] = None
    damping: Optional[Tuple[float, ...]] = None
    wall_time_s: float
    metadata: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _fill_error(self) -> "PriceReport":
        if self.reference not in (None, 0) and self.relative_error is None:
            self.relative_error = abs(self.estimate - self.reference) / abs(self.reference)
        return self

    def convergence_row(self) -> Dict[str, Any]:
        if self.method is Method.MC:
            work = self.M
        elif self.method is Method.COS2D:
            work = self.n_cf
        else:
            work = self.n_eval
        return {
            "method": self.method.value,
            "N": self.n_points if self.n_points is not None else work,
            "N_eval": work,
            "estimate": self.estimate,
            "relative_error": self.relative_error,
            "wall_time_s": self.wall_time_s,
        }


class ExperimentService:
    """Runs experiments and convergence sweeps"""

    def __init__(self, metrics: Optional[MetricsService] = None):
        self.metrics = metrics or MetricsService()

    # ------------------------------------------------------------------
    # damping
    # ------------------------------------------------------------------

    def resolve_damping(self, config: ExperimentConfig) -> DampingVector:
        """Damping vector for a quadrature experiment.

        Raises:
            ConfigError: If a fixed or offset vector leaves the strip intersection
        """
        choice = config.damping
        model, payoff = config.model, config.payoff
        if choice.mode == "fixed":
            try:
                return DampingVector.create(choice.R, model, payoff)
            except PricingError as exc:
                raise ConfigError(f"fixed damping rejected: {exc}") from exc

        overrides = {k: v for k, v in {"tol": choice.tol, "max_iter": choice.max_iter}.items() if v is not None}
        optimal = optimal_damping(model, payoff, DampingOptions(**overrides))
        if choice.mode == "offset":
            try:
                return optimal.shifted(choice.offset, model, payoff)
            except PricingError as exc:
                raise ConfigError(f"offset damping rejected: {exc}") from exc
        return optimal

    # ------------------------------------------------------------------
    # methods
    # ------------------------------------------------------------------

    def _quadrature(self, config: ExperimentConfig, damping: DampingVector) -> HierarchicalQuadrature:
        integrand = FourierIntegrand(config.model, config.payoff, damping)
        opts = config.options
        return HierarchicalQuadrature(
            integrand,
            config.model.d,
            rule=opts.rule,
            level_to_nodes="tp" if config.method is Method.TP else "sparse",
            scale=opts.scale,
            half_space=opts.half_space,
        )

    def _run_quadrature(self, config: ExperimentConfig, quadrature: HierarchicalQuadrature,
                        budget: Optional[int]) -> Tuple[float, int, int, Dict[str, Any]]:
        opts = config.options
        if config.method is Method.ASGQ:
            result = AdaptiveSparseGrid(quadrature, budget or 10 ** 12, opts.threshold).run()
            meta = {
                "index_set": result.index_set.to_list(),
                "budget_exhausted": result.budget_exhausted,
                "capped_indices": result.capped,
            }
            return result.estimate, result.n_points, result.n_eval, meta

        tp = config.method is Method.TP
        d = quadrature.d

        def cost(level: int) -> float:
            # top index carries the largest univariate rule of the set
            top = (level + 1,) * d if tp else (level + 1,) + (1,) * (d - 1)
            if not quadrature.within_caps(top):
                return math.inf
            return tp_cost(quadrature, level) if tp else smolyak_cost(quadrature, level)

        level = opts.level if budget is None else largest_level_within(cost, budget)
        if level is None:
            raise ConfigError(f"budget {budget} is below the cheapest {config.method.value} level")
        if config.method is Method.TP:
            result = quadrature.tp_estimate(level)
        else:
            result = quadrature.smolyak_estimate(level)
        return result.estimate, result.n_points, result.n_eval, {"level": level}

    def _execute(self, config: ExperimentConfig, budget: Optional[int] = None,
                 damping: Optional[DampingVector] = None) -> PriceReport:
        opts = config.options
        started = time.perf_counter()
        common = {"name": config.label, "method": config.method, "reference": config.reference}

        if config.method is Method.MC:
            M = budget or opts.M or settings.mc_samples
            result = mc_price(config.model, config.payoff, M=M, seed=opts.seed)
            self.metrics.record_mc_samples(config.model.family.value, M)
            return PriceReport(
                **common, estimate=result.estimate, M=M, stat_error=result.stat_error,
                wall_time_s=time.perf_counter() - started,
                metadata={"seed": result.seed, "rel_stat_error": result.rel_stat_error},
            )

        if config.method is Method.COS2D:
            cos_config = CosConfig(**{
                k: v for k, v in {"n_cos": budget or opts.n_cos, "q": opts.q, "L": opts.L}.items()
                if v is not None
            })
            if opts.q is None and cos_config.q < cos_config.n_cos:
                cos_config = cos_config.model_copy(update={"q": cos_config.n_cos})
            result = cos_price(config.model, config.payoff, cos_config)
            self.metrics.record_work("COS2D", chf_evaluations=result.n_cf)
            return PriceReport(
                **common, estimate=result.estimate, n_cf=result.n_cf,
                wall_time_s=time.perf_counter() - started,
                metadata={"n_cos": cos_config.n_cos, "q": cos_config.q, "range": [result.a, result.b]},
            )

        damping = damping or self.resolve_damping(config)
        quadrature = self._quadrature(config, damping)
        integrand = quadrature.integrand
        evaluations_before = integrand.n_evaluations
        estimate, n_points, n_eval, meta = self._run_quadrature(
            config, quadrature, budget if budget is not None else opts.budget
        )
        fresh = integrand.n_evaluations - evaluations_before
        self.metrics.record_work(config.method.value, integrand_evaluations=fresh, chf_evaluations=fresh)
        meta["damping_converged"] = damping.converged
        return PriceReport(
            **common, estimate=estimate, n_points=n_points, n_eval=n_eval, n_cf=n_eval,
            damping=damping.R, wall_time_s=time.perf_counter() - started, metadata=meta,
        )

    # ------------------------------------------------------------------
    # public API
    # ------------------------------------------------------------------

    def run(self, config: ExperimentConfig) -> PriceReport:
        """Run one experiment; wall time includes damping optimization.

        Raises:
            ExperimentError: Wrapping any pricing error with the experiment label
        """
        started = time.perf_counter()
        try:
            report = self._execute(config)
        except PricingError as exc:
            self.metrics.record_experiment(config.method.value, "error", time.perf_counter() - started)
            logger.error("experiment_failed", experiment=config.label, error=str(exc))
            raise ExperimentError(f"{config.label}: {exc}", experiment=config.label) from exc
        report.wall_time_s = time.perf_counter() - started
        self.metrics.record_experiment(config.method.value, "ok", report.wall_time_s)
        logger.info(
            "experiment_finished",
            experiment=config.label,
            method=config.method.value,
            estimate=report.estimate,
            relative_error=report.relative_error,
            wall_time_s=round(report.wall_time_s, 4),
        )
        return report

    def run_batch(self, configs: Sequence[ExperimentConfig],
                  max_workers: Optional[int] = None) -> Tuple[List[PriceReport], List[ExperimentError]]:
        """Run independent experiments, collecting failures instead of stopping"""
        workers = max_workers or settings.max_parallel_experiments

        def attempt(config: ExperimentConfig):
            try:
                return self.run(config)
            except ExperimentError as exc:
                return exc

        if workers > 1 and len(configs) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                outcomes = list(pool.map(attempt, configs))
        else:
            outcomes = [attempt(c) for c in configs]
        reports = [o for o in outcomes if isinstance(o, PriceReport)]
        errors = [o for o in outcomes if isinstance(o, ExperimentError)]
        return reports, errors

    def reference_for(self, config: ExperimentConfig) -> float:
        """Registry/config reference, else a Monte Carlo pre-run"""
        if config.reference is not None:
            return config.reference
        result = mc_price(config.model, config.payoff, M=settings.mc_samples, seed=config.options.seed)
        logger.info("reference_from_mc", experiment=config.label, estimate=result.estimate)
        return result.estimate

    def sweep(self, config: ExperimentConfig, budgets: Sequence[int]) -> pd.DataFrame:
        """One convergence row per budget.

        Budgets are evaluation caps for TP/SM/ASGQ, N_COS for COS2D and the
        sample count for MC. They must be non-decreasing.
        """
        budgets = list(budgets)
        if not budgets:
            return convergence_frame([])
        if any(b2 < b1 for b1, b2 in zip(budgets, budgets[1:])):
            raise ConfigError("sweep budgets must be non-decreasing")

        reference = self.reference_for(config)
        config = config.model_copy(update={"reference": reference})

        damping = None
        if config.method in QUADRATURE_METHODS:
            started = time.perf_counter()
            try:
                damping = self.resolve_damping(config)
            except PricingError as exc:
                raise ExperimentError(f"{config.label}: {exc}", experiment=config.label) from exc
            logger.info("sweep_damping_resolved", experiment=config.label, R=list(damping.R),
                        wall_time_s=time.perf_counter() - started)

        rows = []
        for budget in budgets:
            try:
                # each row builds its own quadrature
                report = self._execute(config, budget=budget, damping=damping)
            except ConfigError as exc:
                logger.warning("sweep_budget_skipped", budget=budget, reason=str(exc))
                continue
            except PricingError as exc:
                raise ExperimentError(f"{config.label}: {exc}", experiment=config.label) from exc
            rows.append(report.convergence_row())
            logger.debug("sweep_row", budget=budget, **rows[-1])
        return convergence_frame(rows)

