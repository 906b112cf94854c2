"""Exact weighted set cover by exhaustive search."""

from __future__ import annotations

from typing import List, Optional, Tuple

from core.errors import BudgetExceeded, Uncoverable
from utils.config_validator import OracleBudget

from .search import subset_search


def brute_force_set_cover(inst, budget: Optional[OracleBudget] = None) -> Tuple[List[int], float]:
    """Minimum-weight cover of ``inst.universe`` by ``inst.sets`` (0-based positions, weight).

    Accepts anything exposing ``universe``, ``sets`` and ``weights``.
    """

    budget = budget or OracleBudget()
    reachable = frozenset().union(*inst.sets)
    if not frozenset(inst.universe) <= reachable:
        raise Uncoverable(frozenset(inst.universe) - reachable, what="element")
    if len(inst.sets) > budget.max_feasible_edges:
        raise BudgetExceeded(f"max_feasible_edges={budget.max_feasible_edges}", len(inst.sets))

    positions = sorted(range(len(inst.sets)), key=lambda k: (inst.weights[k], k))
    universe = frozenset(inst.universe)
    result = subset_search(
        positions,
        {k: inst.weights[k] for k in positions},
        lambda chosen: universe <= frozenset().union(*(inst.sets[k] for k in chosen)),
        time_limit_s=budget.time_limit_s,
    )
    picks = sorted(result.best)
    return picks, sum(inst.weights[k] for k in picks)
