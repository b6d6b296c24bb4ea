"""Multi-indices and downward-closed index sets."""
from itertools import product
from typing import Iterable, Iterator, Tuple

MultiIndex = Tuple[int, ...]


def as_multi_index(beta: Iterable[int]) -> MultiIndex:
    beta = tuple(int(b) for b in beta)
    if not beta or min(beta) < 1:
        raise ValueError(f"multi-index entries must be >= 1, got {beta}")
    return beta


def root_index(d: int) -> MultiIndex:
    return (1,) * d


def forward_neighbors(beta: MultiIndex) -> Iterator[MultiIndex]:
    for i in range(len(beta)):
        yield beta[:i] + (beta[i] + 1,) + beta[i + 1:]


def backward_neighbors(beta: MultiIndex) -> Iterator[MultiIndex]:
    for i in range(len(beta)):
        if beta[i] > 1:
            yield beta[:i] + (beta[i] - 1,) + beta[i + 1:]


class IndexSet:
    """Set of multi-indices of a common dimension"""

    def __init__(self, indices: Iterable[Iterable[int]] = (), d: int | None = None):
        self._indices = {as_multi_index(b) for b in indices}
        dims = {len(b) for b in self._indices}
        if len(dims) > 1:
            raise ValueError("multi-indices must share one dimension")
        self.d = dims.pop() if dims else d

    def __contains__(self, beta) -> bool:
        return tuple(beta) in self._indices

    def __iter__(self) -> Iterator[MultiIndex]:
        return iter(sorted(self._indices))

    def __len__(self) -> int:
        return len(self._indices)

    def __repr__(self) -> str:
        return f"IndexSet(d={self.d}, size={len(self)})"

    def add(self, beta: Iterable[int]) -> None:
        self._indices.add(as_multi_index(beta))

    def is_admissible(self, beta: MultiIndex) -> bool:
        """All backward neighbors of beta already belong to the set"""
        return all(b in self._indices for b in backward_neighbors(beta))

    def is_downward_closed(self) -> bool:
        return all(self.is_admissible(beta) for beta in self._indices)

    def to_list(self) -> list:
        return [list(b) for b in self]


def rectangular_index_set(upper: MultiIndex) -> IndexSet:
    """All beta with 1 <= beta <= upper componentwise"""
    return IndexSet(product(*(range(1, u + 1) for u in upper)), d=len(upper))


def tp_index_set(level: int, d: int) -> IndexSet:
    """max_i (beta_i - 1) <= level"""
    if level < 0:
        raise ValueError("level must be non-negative")
    return rectangular_index_set((level + 1,) * d)


def smolyak_index_set(level: int, d: int) -> IndexSet:
    """sum_i (beta_i - 1) <= level"""
    if level < 0:
        raise ValueError("level must be non-negative")
    indices = [
        beta for beta in product(range(1, level + 2), repeat=d)
        if sum(beta) - d <= level
    ]
    return IndexSet(indices, d=d)
