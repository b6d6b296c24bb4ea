"""
Dimension-adaptive sparse-grid quadrature.

A greedy loop over a downward-closed index set: the active index with the
largest profit |dQ| / dW is accepted, its admissible forward neighbours are
evaluated and become active. The estimate is the sum of hierarchical
differences over accepted and active indices.
"""
import heapq
import math
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple, Union

import structlog

from src.exceptions import ConfigError

from .estimators import HierarchicalQuadrature, Integrand, QuadratureResult
from .index_sets import IndexSet, MultiIndex, forward_neighbors, root_index
from .rules import RuleKind

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class ProfitTraceEntry:
    """State of the loop when one index was accepted"""
    index: MultiIndex
    profit: float
    n_eval: int
    estimate: float
    max_other_active: float


@dataclass
class AdaptiveResult(QuadratureResult):
    """ASGQ result with the final sets and the acceptance trace"""
    accepted: IndexSet = None
    active: IndexSet = None
    trace: List[ProfitTraceEntry] = field(default_factory=list)
    budget_exhausted: bool = False
    capped: int = 0


class AdaptiveSparseGrid:
    """Greedy profit-driven index-set construction.

    Args:
        quadrature: Memoizing tensor quadrature using the sparse level map
        budget: Maximum integrand evaluations summed over processed indices
        threshold: Stop once the best active profit falls below this value
    """

    def __init__(self, quadrature: HierarchicalQuadrature, budget: int, threshold: float = 0.0):
        self.quadrature = quadrature
        self.budget = int(budget)
        self.threshold = float(threshold)
        self.d = quadrature.d

    def _work(self, beta: MultiIndex) -> int:
        return self.quadrature.tensor_cost(beta)

    def run(self) -> AdaptiveResult:
        started = time.perf_counter()
        root = root_index(self.d)
        if self._work(root) > self.budget:
            raise ConfigError(
                f"budget {self.budget} is below the cost {self._work(root)} of the root index"
            )

        accepted = IndexSet(d=self.d)
        deltas: Dict[MultiIndex, float] = {}
        profits: Dict[MultiIndex, float] = {}
        heap: List[Tuple[float, MultiIndex]] = []
        used = 0
        exhausted = False
        capped: Set[MultiIndex] = set()
        trace: List[ProfitTraceEntry] = []

        def activate(beta: MultiIndex) -> None:
            nonlocal used
            work = self._work(beta)
            deltas[beta] = self.quadrature.delta_estimate(beta)
            used += work
            profits[beta] = abs(deltas[beta]) / work
            # max-heap on profit, ties to the lexicographically smaller index
            heapq.heappush(heap, (-profits[beta], beta))

        activate(root)
        while heap:
            neg_profit, beta = heap[0]
            profit = -neg_profit
            if profit < self.threshold:
                break
            heapq.heappop(heap)
            accepted.add(beta)
            others = max((-p for p, _ in heap), default=0.0)
            trace.append(ProfitTraceEntry(beta, profit, used, math.fsum(deltas.values()), others))
            logger.debug("asgq_index_accepted", index=beta, profit=profit, n_eval=used)

            for neighbor in forward_neighbors(beta):
                if neighbor in profits or neighbor in capped or not accepted.is_admissible(neighbor):
                    continue
                if not self.quadrature.within_caps(neighbor):
                    # beyond the rule or grid cap: never refined, the loop goes on without it
                    capped.add(neighbor)
                    continue
                if used + self._work(neighbor) > self.budget:
                    exhausted = True
                    continue
                activate(neighbor)
            if exhausted:
                break

        active = IndexSet((b for _, b in heap), d=self.d)
        everything = IndexSet(list(accepted) + list(active), d=self.d)
        estimate = math.fsum(deltas.values())
        logger.info(
            "asgq_finished",
            estimate=estimate,
            n_eval=used,
            accepted=len(accepted),
            active=len(active),
            budget_exhausted=exhausted,
            capped=len(capped),
        )
        return AdaptiveResult(
            estimate=estimate,
            n_points=sum(self.quadrature.n_points(b) for b in everything),
            n_eval=used,
            index_set=everything,
            wall_time_s=time.perf_counter() - started,
            accepted=accepted,
            active=active,
            trace=trace,
            budget_exhausted=exhausted,
            capped=len(capped),
        )


def asgq_estimate(
    f: Integrand,
    d: int,
    budget: int,
    threshold: float = 0.0,
    rule: Union[RuleKind, str] = RuleKind.LAGUERRE,
    quadrature: Optional[HierarchicalQuadrature] = None,
) -> AdaptiveResult:
    """Adaptive sparse-grid estimate of the integral of f over R^d"""
    quadrature = quadrature or HierarchicalQuadrature(f, d, rule, "sparse")
    return AdaptiveSparseGrid(quadrature, budget, threshold).run()
