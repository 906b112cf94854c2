"""Exact reference solvers for feedback selection and D_R cycle covers."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Mapping, Optional, Sequence

from core.errors import BudgetExceeded, Infeasible
from core.report import SolveReport, SolveStats
from core.system import FeedbackSet, Link, StructuredSystem, cost_of
from core.validation import require_valid
from reduction.condensed import Cycle, covered_nodes, uncovered_by_any
from sfm.certificate import has_no_sfm, is_sfm_free
from utils.config_validator import OracleBudget

from .search import subset_search

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoverSolution:
    """Minimum-cost edge set covering every target node with D_R cycles."""

    edges: FrozenSet[Link]
    cost: float
    visited: int


def _ordered(links: Iterable[Link], costs: Mapping[Link, float]) -> list:
    return sorted(set(links), key=lambda link: (costs[link], link))


def brute_force_problem1(
    sys: StructuredSystem,
    P: Mapping[Link, float],
    budget: Optional[OracleBudget] = None,
) -> SolveReport:
    """Cheapest feedback set without structurally fixed modes, checked on both conditions.

    Does not need B(A) to have a perfect matching.
    """

    budget = budget or OracleBudget()
    started = time.perf_counter()
    require_valid(sys, P)
    links = _ordered(P, P)
    if len(links) > budget.max_feasible_edges:
        raise BudgetExceeded(f"max_feasible_edges={budget.max_feasible_edges}", len(links))
    if not is_sfm_free(sys, links):
        raise Infeasible("no feedback pattern removes every structurally fixed mode")

    result = subset_search(
        links,
        dict(P),
        lambda chosen: is_sfm_free(sys, chosen),
        time_limit_s=budget.time_limit_s,
    )
    feedback = FeedbackSet(result.best)
    logger.info("Oracle optimum %.6g over %d feasible links (%d nodes)", result.cost, len(links), result.visited)
    return SolveReport(
        solver="oracle",
        feedback=feedback,
        cost=cost_of(feedback, P),
        certificate=has_no_sfm(sys, feedback),
        stats=SolveStats(
            iterations=result.visited,
            elapsed_s=time.perf_counter() - started,
            extra={"feasible_links": len(links)},
        ),
    )


def cover_goal(cycles: Sequence[Cycle], nodes: Optional[Iterable[int]]) -> FrozenSet[int]:
    if nodes is not None:
        return frozenset(nodes)
    return frozenset().union(*(c.nodes for c in cycles))


def brute_force_problem2(
    cycles: Sequence[Cycle],
    costs: Mapping[Link, float],
    budget: Optional[OracleBudget] = None,
    nodes: Optional[Iterable[int]] = None,
) -> CoverSolution:
    """Cheapest subset of the cycles' edges under which every node lies on a fully selected cycle."""

    budget = budget or OracleBudget()
    goal = cover_goal(cycles, nodes)
    missing = uncovered_by_any(cycles, goal)
    if missing:
        raise Infeasible("SCCs " + ", ".join(f"N{a}" for a in missing) + " lie on no cycle")
    links = _ordered(frozenset().union(*(c.edges for c in cycles)), costs)
    if len(links) > budget.max_feasible_edges:
        raise BudgetExceeded(f"max_feasible_edges={budget.max_feasible_edges}", len(links))

    result = subset_search(
        links,
        dict(costs),
        lambda chosen: goal <= covered_nodes(cycles, chosen),
        time_limit_s=budget.time_limit_s,
    )
    return CoverSolution(edges=result.best, cost=cost_of(result.best, costs), visited=result.visited)


def optimal_edge_sets(
    cycles: Sequence[Cycle],
    costs: Mapping[Link, float],
    budget: Optional[OracleBudget] = None,
    nodes: Optional[Iterable[int]] = None,
) -> Sequence[FrozenSet[Link]]:
    """Every inclusion-minimal edge set attaining the cycle-cover optimum."""

    budget = budget or OracleBudget()
    best = brute_force_problem2(cycles, costs, budget, nodes)
    goal = cover_goal(cycles, nodes)
    links = _ordered(frozenset().union(*(c.edges for c in cycles)), costs)
    result = subset_search(
        links,
        dict(costs),
        lambda chosen: goal <= covered_nodes(cycles, chosen),
        time_limit_s=budget.time_limit_s,
        bound=best.cost,
        collect=True,
    )
    return result.collected
