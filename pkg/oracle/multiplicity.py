"""Edge multiplicities of optimal cycle covers.

For a cover, m(e) counts the member cycles using edge e. k1 is the
largest m(e); k2 is the smallest, over member cycles C_j, of the largest
m(e) among edges outside E_j (at least 1). The tilde constants minimise
these over every inclusion-minimal cover that attains the optimum.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections import Counter
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from core.errors import BudgetExceeded
from core.system import COST_TOLERANCE, Link, format_link
from reduction.condensed import Cycle
from utils.config_validator import OracleBudget

from .brute_force import cover_goal, optimal_edge_sets

logger = logging.getLogger(__name__)


def cover_multiplicities(cover: Sequence[Cycle]) -> Tuple[int, int]:
    """(k1, k2) of a set of cycles."""

    if not cover:
        return (0, 0)
    counts = Counter(e for cycle in cover for e in cycle.edges)
    k1 = max(counts.values())
    k2 = min(
        max((n for e, n in counts.items() if e not in cycle.edges), default=0)
        for cycle in cover
    )
    return (k1, max(k2, 1))


@dataclass(frozen=True)
class CoverProfile:
    """One optimal cover: 1-based cycle positions plus its multiplicities."""

    cycles: Tuple[int, ...]
    edges: FrozenSet[Link]
    k1: int
    k2: int

    def to_json(self) -> Dict[str, Any]:
        return {
            "cycles": list(self.cycles),
            "links": [format_link(e) for e in sorted(self.edges)],
            "k1": self.k1,
            "k2": self.k2,
        }


@dataclass(frozen=True)
class MultiplicityReport:
    optimum: float
    k1: int
    k2: int
    covers: Tuple[CoverProfile, ...]
    witness_k1: CoverProfile
    witness_k2: CoverProfile

    def to_json(self) -> Dict[str, Any]:
        return {
            "optimum": self.optimum,
            "k1": self.k1,
            "k2": self.k2,
            "witness_k1": self.witness_k1.to_json(),
            "witness_k2": self.witness_k2.to_json(),
            "covers": [c.to_json() for c in self.covers],
        }


def _union_cost(members: Iterable[Cycle], costs: Mapping[Link, float]) -> float:
    edges = frozenset().union(*(c.edges for c in members))
    return math.fsum(costs[e] for e in sorted(edges))


def multiplicities(
    cycles: Sequence[Cycle],
    costs: Mapping[Link, float],
    budget: Optional[OracleBudget] = None,
    nodes: Optional[Iterable[int]] = None,
) -> MultiplicityReport:
    """Enumerate every inclusion-minimal optimal cycle cover and minimise k1 and k2 over them.

    Raises BudgetExceeded when the cycles usable by some optimal edge set
    outnumber ``budget.max_cover_cycles``.
    """

    budget = budget or OracleBudget()
    goal = cover_goal(cycles, nodes)
    edge_sets = optimal_edge_sets(cycles, costs, budget, nodes)
    free = {e for c in cycles for e in c.edges if costs[e] <= COST_TOLERANCE}
    optimum = math.fsum(costs[e] for e in sorted(edge_sets[0])) if edge_sets else 0.0

    found: List[FrozenSet[int]] = []
    seen: Set[FrozenSet[int]] = set()
    for allowed in edge_sets:
        usable = [k for k, c in enumerate(cycles) if c.edges <= allowed | free and c.nodes & goal]
        if len(usable) > budget.max_cover_cycles:
            raise BudgetExceeded(f"max_cover_cycles={budget.max_cover_cycles}", len(usable))
        for size in range(1, len(usable) + 1):
            for combo in itertools.combinations(usable, size):
                picked = frozenset(combo)
                if picked in seen or any(prior < picked for prior in found):
                    continue
                members = [cycles[k] for k in combo]
                if not goal <= frozenset().union(*(c.nodes for c in members)):
                    continue
                if abs(_union_cost(members, costs) - optimum) > COST_TOLERANCE:
                    continue
                seen.add(picked)
                found.append(picked)

    profiles = []
    for picked in sorted(found, key=lambda s: (len(s), sorted(s))):
        members = [cycles[k] for k in sorted(picked)]
        k1, k2 = cover_multiplicities(members)
        profiles.append(
            CoverProfile(
                cycles=tuple(k + 1 for k in sorted(picked)),
                edges=frozenset().union(*(c.edges for c in members)),
                k1=k1,
                k2=k2,
            )
        )
    if not profiles:
        empty = CoverProfile(cycles=(), edges=frozenset(), k1=0, k2=0)
        return MultiplicityReport(optimum=optimum, k1=0, k2=0, covers=(), witness_k1=empty, witness_k2=empty)

    witness_k1 = min(profiles, key=lambda p: (p.k1, p.k2, p.cycles))
    witness_k2 = min(profiles, key=lambda p: (p.k2, p.k1, p.cycles))
    logger.info(
        "%d optimal covers at cost %.6g; k1 = %d, k2 = %d",
        len(profiles),
        optimum,
        witness_k1.k1,
        witness_k2.k2,
    )
    return MultiplicityReport(
        optimum=optimum,
        k1=witness_k1.k1,
        k2=witness_k2.k2,
        covers=tuple(profiles),
        witness_k1=witness_k1,
        witness_k2=witness_k2,
    )
