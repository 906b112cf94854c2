"""Depth-first branch and bound over subsets under a monotone feasibility predicate."""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Generic, Hashable, List, Optional, Sequence, Tuple, TypeVar

from core.errors import BudgetExceeded
from core.system import COST_TOLERANCE

logger = logging.getLogger(__name__)

T = TypeVar("T", bound=Hashable)


@dataclass
class SearchResult(Generic[T]):
    cost: Optional[float] = None
    best: Optional[FrozenSet[T]] = None
    collected: List[FrozenSet[T]] = field(default_factory=list)
    visited: int = 0


def _rank(chosen: FrozenSet[T]) -> Tuple[int, Tuple[T, ...]]:
    return (len(chosen), tuple(sorted(chosen)))


def subset_search(
    items: Sequence[T],
    weight: Dict[T, float],
    feasible: Callable[[FrozenSet[T]], bool],
    time_limit_s: float,
    bound: Optional[float] = None,
    collect: bool = False,
) -> SearchResult[T]:
    """Minimum-weight feasible subset of ``items``.

    ``feasible`` must be monotone under inclusion. Items are branched in
    the given order, inclusion first; a branch stops at its first feasible
    subset, so every reported set is inclusion-minimal along its branch.
    Ties on weight go to the smaller set, then the lexicographically
    smaller one. With ``collect`` every minimal feasible subset of weight
    at most ``bound`` is gathered instead.
    """

    deadline = time.perf_counter() + time_limit_s
    result: SearchResult[T] = SearchResult()
    cache: Dict[FrozenSet[T], bool] = {}
    limit = math.inf if bound is None else bound

    def check(chosen: FrozenSet[T]) -> bool:
        if chosen not in cache:
            cache[chosen] = feasible(chosen)
        return cache[chosen]

    def visit(k: int, chosen: FrozenSet[T], cost: float) -> None:
        nonlocal limit
        result.visited += 1
        if result.visited % 256 == 0 and time.perf_counter() > deadline:
            raise BudgetExceeded(f"time_limit_s={time_limit_s}", f"{result.visited} nodes explored")
        if cost > limit + COST_TOLERANCE:
            return
        if check(chosen):
            if collect:
                result.collected.append(chosen)
                return
            if (
                result.best is None
                or cost < result.cost - COST_TOLERANCE
                or (abs(cost - result.cost) <= COST_TOLERANCE and _rank(chosen) < _rank(result.best))
            ):
                result.best, result.cost = chosen, cost
                limit = cost
            return
        if k == len(items) or not check(chosen | frozenset(items[k:])):
            return
        item = items[k]
        visit(k + 1, chosen | {item}, cost + weight[item])
        visit(k + 1, chosen, cost)

    visit(0, frozenset(), 0.0)
    if collect:
        found = sorted(set(result.collected), key=_rank)
        result.collected = [s for s in found if not any(other < s for other in found)]
    logger.debug("Subset search over %d items visited %d nodes", len(items), result.visited)
    return result
