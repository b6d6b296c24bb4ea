"""
Tensor-product, hierarchical-difference, TP and Smolyak estimators.

The integrand is any vectorized callable mapping an (n, d) array of points
in R^d to n real values. Tensor estimates are memoized per multi-index so
hierarchical differences and growing index sets never re-evaluate a grid.
"""
import threading
import time
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Dict, Iterable, List, Optional, Union

import numpy as np
import structlog

from src.config.settings import settings
from src.exceptions import BudgetExceededError

from .index_sets import IndexSet, MultiIndex, as_multi_index, smolyak_index_set, tp_index_set
from .rules import LEVEL_TO_NODES, LevelToNodes, RuleKind, full_line_rule, points_per_node

logger = structlog.get_logger(__name__)

Integrand = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class TensorEstimate:
    """One memoized tensor-product estimate"""
    value: float
    n_eval: int
    n_points: int


@dataclass
class QuadratureResult:
    """Estimate over an index set with both work conventions"""
    estimate: float
    n_points: int
    n_eval: int
    index_set: IndexSet
    wall_time_s: float = 0.0
    metadata: Dict = field(default_factory=dict)


class HierarchicalQuadrature:
    """Memoizing tensor-product quadrature over R^d.

    Args:
        integrand: Vectorized callable on (n, d) arrays
        d: Dimension
        rule: Univariate family used in every dimension
        level_to_nodes: ``"tp"``, ``"sparse"`` or a callable m(beta)
        scale: Node scale of the full-line mapping
        half_space: Use g(-u) = g(u) to evaluate only half of each grid
        max_evaluations: Cap on the evaluations of a single tensor grid
        chunk_size: Points evaluated per integrand call
    """

    def __init__(
        self,
        integrand: Integrand,
        d: int,
        rule: Union[RuleKind, str] = RuleKind.LAGUERRE,
        level_to_nodes: Union[str, LevelToNodes] = "sparse",
        scale: float = 1.0,
        half_space: bool = False,
        max_evaluations: Optional[int] = None,
        chunk_size: Optional[int] = None,
    ):
        self.integrand = integrand
        self.d = d
        self.rule = RuleKind(rule)
        self.level_to_nodes = (
            LEVEL_TO_NODES[level_to_nodes] if isinstance(level_to_nodes, str) else level_to_nodes
        )
        self.scale = float(scale)
        self.half_space = half_space
        self.max_evaluations = max_evaluations or settings.max_tensor_evaluations
        self.chunk_size = chunk_size or settings.evaluation_chunk_size
        self.n_evaluations = 0
        self._cache: Dict[MultiIndex, TensorEstimate] = {}
        self._lock = threading.Lock()

    # ------------------------------------------------------------------
    # work accounting
    # ------------------------------------------------------------------

    def n_points(self, beta: MultiIndex) -> int:
        """Point count prod m(beta_i), without the Laguerre reflections"""
        return int(np.prod([self.level_to_nodes(b) for b in beta], dtype=np.int64))

    def tensor_cost(self, beta: MultiIndex) -> int:
        """Integrand evaluations of the tensor grid at beta"""
        sizes = [points_per_node(self.rule) * self.level_to_nodes(b) for b in beta]
        if self.half_space:
            return _half_space_count(sizes)
        return int(np.prod(sizes, dtype=np.int64))

    def within_caps(self, beta: MultiIndex) -> bool:
        """Whether every univariate rule and the tensor grid at beta respect the configured caps"""
        if max(self.level_to_nodes(b) for b in beta) > settings.max_rule_nodes:
            return False
        return self.tensor_cost(beta) <= self.max_evaluations

    def is_cached(self, beta: MultiIndex) -> bool:
        return tuple(beta) in self._cache

    # ------------------------------------------------------------------
    # estimators
    # ------------------------------------------------------------------

    def _grid(self, beta: MultiIndex):
        rules = [full_line_rule(self.rule, self.level_to_nodes(b), self.scale) for b in beta]
        return [r.nodes for r in rules], [r.weights for r in rules]

    def _evaluate(self, beta: MultiIndex) -> float:
        nodes, weights = self._grid(beta)
        shape = tuple(n.size for n in nodes)
        total_points = int(np.prod(shape, dtype=np.int64))
        accumulator = 0.0
        for start in range(0, total_points, self.chunk_size):
            flat = np.arange(start, min(start + self.chunk_size, total_points))
            position = np.unravel_index(flat, shape)
            points = np.column_stack([nodes[i][position[i]] for i in range(self.d)])
            w = np.prod(np.column_stack([weights[i][position[i]] for i in range(self.d)]), axis=1)
            if self.half_space:
                points, w = _half_space(points, w)
            if points.shape[0]:
                accumulator += float(np.asarray(self.integrand(points)) @ w)
        return accumulator

    def tensor_estimate(self, beta: Iterable[int]) -> TensorEstimate:
        """Tensor-product estimate at beta, memoized"""
        beta = as_multi_index(beta)
        cached = self._cache.get(beta)
        if cached is not None:
            return cached
        cost = self.tensor_cost(beta)
        if cost > self.max_evaluations:
            raise BudgetExceededError(
                f"tensor grid {beta} needs {cost} evaluations, cap is {self.max_evaluations}"
            )
        value = self._evaluate(beta)
        estimate = TensorEstimate(value, cost, self.n_points(beta))
        with self._lock:
            self._cache[beta] = estimate
            self.n_evaluations += cost
        return estimate

    def delta_estimate(self, beta: Iterable[int]) -> float:
        """Hierarchical difference by inclusion-exclusion over the 2^d corners"""
        beta = as_multi_index(beta)
        total = 0.0
        for corner in product((0, 1), repeat=self.d):
            lower = tuple(b - c for b, c in zip(beta, corner))
            if min(lower) < 1:
                continue  # zero levels contribute nothing
            sign = -1.0 if sum(corner) % 2 else 1.0
            total += sign * self.tensor_estimate(lower).value
        return total

    def estimate(self, index_set: IndexSet) -> QuadratureResult:
        """Sum of hierarchical differences over an index set"""
        started = time.perf_counter()
        value = sum(self.delta_estimate(beta) for beta in index_set)
        n_eval = sum(self.tensor_estimate(beta).n_eval for beta in index_set)
        n_points = sum(self.tensor_estimate(beta).n_points for beta in index_set)
        return QuadratureResult(
            estimate=value,
            n_points=n_points,
            n_eval=n_eval,
            index_set=index_set,
            wall_time_s=time.perf_counter() - started,
        )

    def tp_estimate(self, level: int) -> QuadratureResult:
        """Full tensor product with level + 1 levels per dimension"""
        started = time.perf_counter()
        top = (level + 1,) * self.d
        tensor = self.tensor_estimate(top)
        return QuadratureResult(
            estimate=tensor.value,
            n_points=tensor.n_points,
            n_eval=tensor.n_eval,
            index_set=tp_index_set(level, self.d),
            wall_time_s=time.perf_counter() - started,
        )

    def smolyak_estimate(self, level: int) -> QuadratureResult:
        """Sum of differences over sum(beta_i - 1) <= level"""
        return self.estimate(smolyak_index_set(level, self.d))


def _half_space(points: np.ndarray, weights: np.ndarray):
    """Keep points whose first nonzero coordinate is positive, doubling their weight"""
    nonzero = points != 0
    has_nonzero = nonzero.any(axis=1)
    first = np.argmax(nonzero, axis=1)
    leading = points[np.arange(points.shape[0]), first]
    keep = ~has_nonzero | (leading > 0)
    factor = np.where(has_nonzero, 2.0, 1.0)
    return points[keep], (weights * factor)[keep]


def _half_space_count(sizes) -> int:
    """Points kept by the half-space mask on a symmetric grid"""
    if not sizes:
        return 1  # the origin
    first, rest = sizes[0], sizes[1:]
    return (first // 2) * int(np.prod(rest, dtype=np.int64)) + (first % 2) * _half_space_count(rest)


# ----------------------------------------------------------------------
# functional forms
# ----------------------------------------------------------------------

def tensor_estimate(f: Integrand, beta: Iterable[int], m: Union[str, LevelToNodes] = "tp",
                    rule: Union[RuleKind, str] = RuleKind.LAGUERRE) -> TensorEstimate:
    """Tensor-product estimate of f at multi-index beta"""
    beta = as_multi_index(beta)
    return HierarchicalQuadrature(f, len(beta), rule, m).tensor_estimate(beta)


def delta_estimate(f: Integrand, beta: Iterable[int], m: Union[str, LevelToNodes] = "sparse",
                   cache: Optional[HierarchicalQuadrature] = None) -> float:
    """Hierarchical difference at beta; pass ``cache`` to reuse tensor estimates"""
    beta = as_multi_index(beta)
    quadrature = cache or HierarchicalQuadrature(f, len(beta), level_to_nodes=m)
    return quadrature.delta_estimate(beta)


def tp_estimate(f: Integrand, level: int, d: int,
                rule: Union[RuleKind, str] = RuleKind.LAGUERRE) -> QuadratureResult:
    return HierarchicalQuadrature(f, d, rule, "tp").tp_estimate(level)


def smolyak_estimate(f: Integrand, level: int, d: int,
                     rule: Union[RuleKind, str] = RuleKind.LAGUERRE) -> QuadratureResult:
    return HierarchicalQuadrature(f, d, rule, "sparse").smolyak_estimate(level)


def largest_level_within(cost_of_level: Callable[[int], int], budget: int, max_level: int = 64) -> Optional[int]:
    """Largest level whose cost fits the budget, None if even level 0 does not"""
    best = None
    for level in range(max_level + 1):
        if cost_of_level(level) > budget:
            break
        best = level
    return best


def smolyak_cost(quadrature: HierarchicalQuadrature, level: int) -> int:
    return sum(quadrature.tensor_cost(beta) for beta in smolyak_index_set(level, quadrature.d))


def tp_cost(quadrature: HierarchicalQuadrature, level: int) -> int:
    return quadrature.tensor_cost((level + 1,) * quadrature.d)


__all__: List[str] = [
    "HierarchicalQuadrature",
    "QuadratureResult",
    "TensorEstimate",
    "delta_estimate",
    "largest_level_within",
    "smolyak_cost",
    "smolyak_estimate",
    "tensor_estimate",
    "tp_cost",
    "tp_estimate",
]
