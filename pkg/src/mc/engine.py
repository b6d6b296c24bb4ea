"""
Monte Carlo reference pricer with reproducible batch streams.

Samples are drawn in fixed-size batches; batch k always uses the k-th child of
the seed's SeedSequence on a counter-based Philox generator, so results do not
depend on the number of worker threads. Batch statistics are merged in batch
order with the pairwise mean/variance update.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, NamedTuple, Optional, Tuple

import numpy as np
import structlog
from pydantic import BaseModel

from src.config.settings import settings
from src.models import ModelSpec, get_dynamics
from src.payoffs import PayoffSpec, payoff

logger = structlog.get_logger(__name__)

CONFIDENCE_FACTOR = 1.96


class MCResult(BaseModel):
    """Discounted sample mean with its CLT error"""
    estimate: float
    std_dev: float
    M: int
    rel_stat_error: Optional[float]
    seed: int

    @property
    def stat_error(self) -> float:
        """Half-width of the 95% confidence interval"""
        return CONFIDENCE_FACTOR * self.std_dev / math.sqrt(self.M)

    @property
    def interval(self) -> Tuple[float, float]:
        return self.estimate - self.stat_error, self.estimate + self.stat_error

    def covers(self, value: float) -> bool:
        low, high = self.interval
        return low <= value <= high


class BatchStats(NamedTuple):
    """Count, mean and sum of squared deviations of one batch"""
    n: int
    mean: float
    m2: float


def merge_stats(left: BatchStats, right: BatchStats) -> BatchStats:
    """Combine two batches without revisiting samples"""
    n = left.n + right.n
    if n == 0:
        return left
    delta = right.mean - left.mean
    mean = left.mean + delta * right.n / n
    m2 = left.m2 + right.m2 + delta ** 2 * left.n * right.n / n
    return BatchStats(n, mean, m2)


def batch_generator(seed: int, index: int) -> np.random.Generator:
    """Generator for batch ``index``; independent of scheduling"""
    child = np.random.SeedSequence(seed, spawn_key=(index,))
    return np.random.Generator(np.random.Philox(child))


def sample_terminal(model: ModelSpec, rng: np.random.Generator, n: int = 1) -> np.ndarray:
    """Draw n samples of X_T, shape (n, d)"""
    return model.x0 + get_dynamics(model).sample_increments(rng, n)


def _batch_sizes(M: int, batch_size: int) -> List[int]:
    full, rest = divmod(M, batch_size)
    return [batch_size] * full + ([rest] if rest else [])


def mc_price(
    model: ModelSpec,
    payoff_spec: PayoffSpec,
    M: Optional[int] = None,
    seed: Optional[int] = None,
    batch_size: Optional[int] = None,
    workers: Optional[int] = None,
) -> MCResult:
    """Discounted Monte Carlo price with a 95% CLT error.

    Args:
        model: Model specification
        payoff_spec: Payoff on the same dimension
        M: Number of samples (>= 2)
        seed: Root seed of the batch streams
        batch_size: Samples per batch
        workers: Threads used for the batches
    """
    M = settings.mc_samples if M is None else int(M)
    seed = settings.mc_seed if seed is None else int(seed)
    batch_size = batch_size or settings.mc_batch_size
    workers = workers or settings.mc_workers
    if M < 2:
        raise ValueError("Monte Carlo needs at least two samples")

    dynamics = get_dynamics(model)
    x0 = model.x0

    def run_batch(item: Tuple[int, int]) -> BatchStats:
        index, size = item
        rng = batch_generator(seed, index)
        values = payoff(payoff_spec, x0 + dynamics.sample_increments(rng, size))
        mean = float(values.mean())
        return BatchStats(size, mean, float(np.sum((values - mean) ** 2)))

    batches = list(enumerate(_batch_sizes(M, batch_size)))
    if workers > 1 and M >= settings.mc_min_parallel_samples and len(batches) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            stats = list(pool.map(run_batch, batches))
    else:
        stats = [run_batch(item) for item in batches]

    total = stats[0]
    for item in stats[1:]:
        total = merge_stats(total, item)

    discount = math.exp(-model.rate * model.maturity)
    estimate = discount * total.mean
    std_dev = discount * math.sqrt(total.m2 / (total.n - 1))
    rel = CONFIDENCE_FACTOR * std_dev / (abs(estimate) * math.sqrt(M)) if estimate != 0 else None

    logger.info(
        "mc_priced",
        model=model.family.value,
        payoff=payoff_spec.family.value,
        M=M,
        seed=seed,
        estimate=estimate,
        rel_stat_error=rel,
    )
    return MCResult(estimate=estimate, std_dev=std_dev, M=M, rel_stat_error=rel, seed=seed)


def required_samples(result: MCResult, target_rel_error: float) -> int:
    """Samples needed for a 95% relative error of ``target_rel_error``"""
    if result.estimate == 0:
        raise ValueError("relative error undefined for a zero estimate")
    return math.ceil((CONFIDENCE_FACTOR * result.std_dev / (abs(result.estimate) * target_rel_error)) ** 2)
