"""Gauss rules, tensor/Smolyak estimators and adaptive sparse grids"""
from .adaptive import AdaptiveResult, AdaptiveSparseGrid, ProfitTraceEntry, asgq_estimate
from .estimators import (
    HierarchicalQuadrature,
    QuadratureResult,
    TensorEstimate,
    delta_estimate,
    largest_level_within,
    smolyak_cost,
    smolyak_estimate,
    tensor_estimate,
    tp_cost,
    tp_estimate,
)
from .index_sets import (
    IndexSet,
    MultiIndex,
    rectangular_index_set,
    smolyak_index_set,
    tp_index_set,
)
from .rules import (
    FullLineRule,
    RuleKind,
    UnivariateRule,
    full_line_nodes,
    full_line_rule,
    hermite_rule,
    laguerre_rule,
    sparse_level_to_nodes,
    tp_level_to_nodes,
)

__all__ = [
    "AdaptiveResult",
    "AdaptiveSparseGrid",
    "FullLineRule",
    "HierarchicalQuadrature",
    "IndexSet",
    "MultiIndex",
    "ProfitTraceEntry",
    "QuadratureResult",
    "RuleKind",
    "TensorEstimate",
    "UnivariateRule",
    "asgq_estimate",
    "delta_estimate",
    "full_line_nodes",
    "full_line_rule",
    "hermite_rule",
    "laguerre_rule",
    "largest_level_within",
    "rectangular_index_set",
    "smolyak_cost",
    "smolyak_estimate",
    "smolyak_index_set",
    "sparse_level_to_nodes",
    "tensor_estimate",
    "tp_cost",
    "tp_estimate",
    "tp_index_set",
    "tp_level_to_nodes",
]
