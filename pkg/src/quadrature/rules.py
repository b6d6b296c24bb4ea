"""
Univariate Gauss rules and their mapping to the whole real line.

Laguerre rules integrate against exp(-x) on [0, inf) and are mapped to R by
reflecting the nodes: integral of f over R ~ sum_k w_k exp(x_k) [f(x_k) + f(-x_k)].
Hermite rules integrate against exp(-x^2) and need the weight compensation
exp(x_k^2) only.
"""
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.special import roots_hermite, roots_laguerre

from src.config.settings import settings
from src.exceptions import ConfigError


class RuleKind(str, Enum):
    """Univariate Gauss families"""
    LAGUERRE = "laguerre"
    HERMITE = "hermite"


@dataclass(frozen=True)
class UnivariateRule:
    """Gauss nodes and weights for one family and node count"""
    kind: RuleKind
    n: int
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class FullLineRule:
    """Nodes and effective weights for an integral over R"""
    kind: RuleKind
    n: int
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return self.nodes.size


def _check_count(n: int) -> None:
    if n < 1:
        raise ConfigError(f"rule needs at least one node, got {n}")
    if n > settings.max_rule_nodes:
        raise ConfigError(f"rule with {n} nodes exceeds the cap of {settings.max_rule_nodes}")


@lru_cache(maxsize=None)
def laguerre_rule(n: int) -> UnivariateRule:
    """n-point Gauss-Laguerre rule for the weight exp(-x) on [0, inf)"""
    _check_count(n)
    nodes, weights = roots_laguerre(n)
    return UnivariateRule(RuleKind.LAGUERRE, n, nodes, weights)


@lru_cache(maxsize=None)
def hermite_rule(n: int) -> UnivariateRule:
    """n-point Gauss-Hermite rule for the weight exp(-x^2) on R"""
    _check_count(n)
    nodes, weights = roots_hermite(n)
    return UnivariateRule(RuleKind.HERMITE, n, nodes, weights)


def _compensated(log_weights: np.ndarray, exponent: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.exp(log_weights + exponent)


def full_line_nodes(rule: UnivariateRule, scale: float = 1.0) -> FullLineRule:
    """Map a rule onto R with weight compensation.

    Args:
        rule: Laguerre or Hermite rule
        scale: Node scale c; integral of f ~ c * sum w f(c x)
    """
    with np.errstate(divide="ignore"):
        log_weights = np.log(rule.weights)
    if rule.kind is RuleKind.LAGUERRE:
        half = _compensated(log_weights, rule.nodes)
        nodes = np.concatenate([-rule.nodes[::-1], rule.nodes])
        weights = np.concatenate([half[::-1], half])
    else:
        # exact mirror pairs and an exact zero for odd n
        nodes = 0.5 * (rule.nodes - rule.nodes[::-1])
        weights = _compensated(log_weights, rule.nodes ** 2)
        weights = 0.5 * (weights + weights[::-1])
    return FullLineRule(rule.kind, rule.n, scale * nodes, scale * weights)


def make_rule(kind: RuleKind | str, n: int) -> UnivariateRule:
    kind = RuleKind(kind)
    return laguerre_rule(n) if kind is RuleKind.LAGUERRE else hermite_rule(n)


@lru_cache(maxsize=None)
def full_line_rule(kind: RuleKind, n: int, scale: float = 1.0) -> FullLineRule:
    """Cached full-line rule"""
    return full_line_nodes(make_rule(kind, n), scale)


def points_per_node(kind: RuleKind | str) -> int:
    """Integrand evaluations per univariate node"""
    return 2 if RuleKind(kind) is RuleKind.LAGUERRE else 1


# Level-to-nodes maps

def tp_level_to_nodes(level: int) -> int:
    """m(beta) = beta"""
    return int(level)


def sparse_level_to_nodes(level: int) -> int:
    """m(1) = 1, m(beta) = 2^(beta-1) + 1"""
    return 1 if level == 1 else 2 ** (level - 1) + 1


LevelToNodes = Callable[[int], int]

LEVEL_TO_NODES = {
    "tp": tp_level_to_nodes,
    "sparse": sparse_level_to_nodes,
}
