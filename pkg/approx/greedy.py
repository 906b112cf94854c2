"""Greedy cycle selection by average cost per newly covered SCC node."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from core.errors import Uncoverable
from core.system import Link
from reduction.condensed import Cycle, uncovered_by_any
from utils.logging_interface import NullLogger, SolverLogger

logger = logging.getLogger(__name__)


def edge_cost(edges: Iterable[Link], costs: Mapping[Link, float]) -> float:
    return math.fsum(costs[e] for e in sorted(set(edges)))


@dataclass
class GreedyState:
    """Covered nodes I, selected edges H and the free edges E_inp.

    H never intersects the free set; I is the union of the selected cycles' node sets.
    """

    free: FrozenSet[Link]
    covered: Set[int] = field(default_factory=set)
    selected: Set[Link] = field(default_factory=set)

    def residual_edges(self, cycle: Cycle) -> FrozenSet[Link]:
        return cycle.edges - self.selected - self.free

    def residual_nodes(self, cycle: Cycle, targets: FrozenSet[int]) -> FrozenSet[int]:
        return (cycle.nodes & targets) - self.covered

    def take(self, cycle: Cycle) -> None:
        self.selected |= cycle.edges - self.free
        self.covered |= cycle.nodes


@dataclass(frozen=True)
class GreedyRound:
    pick: int
    price: float
    table: Tuple[Tuple[int, float, int, float], ...]

    def to_json(self) -> Dict[str, Any]:
        return {
            "pick": self.pick,
            "price": self.price,
            "table": [
                {"cycle": k, "residual_cost": c, "residual_nodes": size, "price": rho}
                for k, c, size, rho in self.table
            ],
        }


@dataclass(frozen=True)
class GreedyOutcome:
    edges: FrozenSet[Link]
    picks: Tuple[int, ...]
    rounds: Tuple[GreedyRound, ...]

    def cost(self, costs: Mapping[Link, float]) -> float:
        return edge_cost(self.edges, costs)


def run_greedy(
    cycles: Sequence[Cycle],
    costs: Mapping[Link, float],
    free_edges: Iterable[Link] = (),
    targets: Optional[Iterable[int]] = None,
    tracer: Optional[SolverLogger] = None,
) -> GreedyOutcome:
    """Cover ``targets`` (default: every node of ``cycles``) one cheapest-per-node cycle at a time.

    Cycle indices in the outcome are 1-based positions in ``cycles``. Ties
    on the price go to the lowest index. Edges in ``free_edges`` cost
    nothing and are never returned.
    """

    tracer = tracer or NullLogger()
    goal = frozenset(targets) if targets is not None else frozenset().union(*(c.nodes for c in cycles))
    missing = uncovered_by_any(cycles, goal)
    if missing:
        raise Uncoverable(missing)

    state = GreedyState(free=frozenset(free_edges))
    picks: List[int] = []
    rounds: List[GreedyRound] = []
    while not goal <= state.covered:
        table = []
        for k, cycle in enumerate(cycles, start=1):
            nodes = state.residual_nodes(cycle, goal)
            if not nodes:
                continue
            residual_cost = edge_cost(state.residual_edges(cycle), costs)
            table.append((k, residual_cost, len(nodes), residual_cost / len(nodes)))
        k, _, _, price = min(table, key=lambda row: (row[3], row[0]))
        state.take(cycles[k - 1])
        picks.append(k)
        rounds.append(GreedyRound(pick=k, price=price, table=tuple(table)))
        logger.debug("Greedy round %d picks cycle %d at price %.6g", len(rounds), k, price)
        tracer.log_event("greedy_round", f"pick C{k} at price {price:g}", rounds[-1].to_json())

    return GreedyOutcome(edges=frozenset(state.selected), picks=tuple(picks), rounds=tuple(rounds))


def greedy(
    cycles: Sequence[Cycle],
    costs: Mapping[Link, float],
    free_edges: Iterable[Link] = (),
    targets: Optional[Iterable[int]] = None,
) -> FrozenSet[Link]:
    return run_greedy(cycles, costs, free_edges, targets).edges
