"""Back-edge feedback structures as weighted set cover.

When every feasible link (i, j) has a path u_i ~> y_j in D(A, B, C), adding
the feedback edge y_j -> u_i closes exactly the states on those paths into
one SCC. Picking feedback links then becomes picking sets of states.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from core.errors import AssumptionViolated, Infeasible, Uncoverable
from core.report import SolveReport, SolveStats
from core.system import FeedbackSet, Link, StructuredSystem, cost_of, edge_label, format_link
from core.validation import require_valid
from graphs.bipartite import max_matching, state_bipartite
from graphs.digraphs import state_digraph, state_node
from sfm.certificate import has_no_sfm
from utils.logging_interface import NullLogger, SolverLogger, TraceLogger

logger = logging.getLogger(__name__)

BACKEDGE_ASSUMPTION = "every feasible link (i, j) has a path from u_i to y_j"


@dataclass(frozen=True)
class BackedgeCheck:
    passed: bool
    violations: Tuple[Link, ...]

    def to_json(self) -> Dict[str, Any]:
        return {"passed": self.passed, "violations": [format_link(v) for v in self.violations]}


@dataclass(frozen=True)
class SetCoverInstance:
    """Universe of states, one set per feasible link, and each set's weight.

    Set positions are 0-based; ``provenance[k]`` is the link that induced set k.
    """

    universe: FrozenSet[int]
    sets: Tuple[FrozenSet[int], ...]
    weights: Tuple[float, ...]
    provenance: Tuple[Link, ...]

    def __post_init__(self) -> None:
        if not (len(self.sets) == len(self.weights) == len(self.provenance)):
            raise ValueError("sets, weights and provenance must have equal length")
        for k, members in enumerate(self.sets):
            if not members <= self.universe:
                raise ValueError(f"Set {k + 1} holds elements outside the universe")
        if any(w < 0 for w in self.weights):
            raise ValueError("Set weights must be >= 0")

    def __len__(self) -> int:
        return len(self.sets)

    def weight_of(self, picks: Sequence[int]) -> float:
        return math.fsum(self.weights[k] for k in sorted(set(picks)))

    def covers(self, picks: Sequence[int]) -> bool:
        covered = frozenset().union(*(self.sets[k] for k in picks))
        return self.universe <= covered

    def links_of(self, picks: Sequence[int]) -> FeedbackSet:
        return FeedbackSet(frozenset(self.provenance[k] for k in picks))

    def to_json(self) -> Dict[str, Any]:
        return {
            "universe": sorted(self.universe),
            "sets": [
                {
                    "index": k + 1,
                    "states": sorted(members),
                    "weight": weight,
                    "edge": edge_label(link),
                    "link": format_link(link),
                }
                for k, (members, weight, link) in enumerate(zip(self.sets, self.weights, self.provenance))
            ],
        }


def _reach(d: nx.DiGraph, state: int, forward: bool) -> FrozenSet[int]:
    walk = nx.descendants if forward else nx.ancestors
    return frozenset({state} | {idx for _, idx in walk(d, state_node(state))})


def check_backedge(sys: StructuredSystem, P: Mapping[Link, float]) -> BackedgeCheck:
    """Find feasible links whose output is not reachable from their input."""

    d = state_digraph(sys)
    reach: Dict[int, FrozenSet[int]] = {}
    violations = []
    for i, j in sorted(P):
        source = sys.state_of_input(i)
        if source not in reach:
            reach[source] = _reach(d, source, forward=True)
        if sys.state_of_output(j) not in reach[source]:
            violations.append((i, j))
    return BackedgeCheck(passed=not violations, violations=tuple(violations))


def reduce_to_set_cover(
    sys: StructuredSystem,
    P: Mapping[Link, float],
    project: bool = False,
) -> SetCoverInstance:
    """One set per feasible link: the states closed into an SCC by that link.

    With ``project`` violating links are dropped with a warning instead of
    raising AssumptionViolated.
    """

    require_valid(sys, P)
    check = check_backedge(sys, P)
    links = sorted(P)
    if not check.passed:
        listed = ", ".join(format_link(v) for v in check.violations)
        if not project:
            raise AssumptionViolated(BACKEDGE_ASSUMPTION, f"violated by {listed}")
        logger.warning("Dropping %d links that break the back-edge structure: %s", len(check.violations), listed)
        dropped = set(check.violations)
        links = [link for link in links if link not in dropped]

    matching = max_matching(state_bipartite(sys))
    if not matching.perfect:
        raise AssumptionViolated("B(A) has a perfect matching", f"maximum matching {matching.size} < {sys.n}")

    d = state_digraph(sys)
    below: Dict[int, FrozenSet[int]] = {}
    above: Dict[int, FrozenSet[int]] = {}
    sets = []
    for i, j in links:
        source, sink = sys.state_of_input(i), sys.state_of_output(j)
        if source not in below:
            below[source] = _reach(d, source, forward=True)
        if sink not in above:
            above[sink] = _reach(d, sink, forward=False)
        sets.append(below[source] & above[sink])

    inst = SetCoverInstance(
        universe=frozenset(sys.states()),
        sets=tuple(sets),
        weights=tuple(P[link] for link in links),
        provenance=tuple(links),
    )
    logger.info("Set-cover instance: %d states, %d sets", len(inst.universe), len(inst))
    return inst


def greedy_set_cover(inst: SetCoverInstance, tracer: Optional[SolverLogger] = None) -> List[int]:
    """Chvátal's rule: minimum weight per newly covered element, ties to the lowest position."""

    tracer = tracer or NullLogger()
    reachable = frozenset().union(*inst.sets)
    if not inst.universe <= reachable:
        raise Uncoverable(inst.universe - reachable, what="element")

    covered: FrozenSet[int] = frozenset()
    picks: List[int] = []
    while not inst.universe <= covered:
        table = [
            (inst.weights[k] / len(members - covered), k)
            for k, members in enumerate(inst.sets)
            if members - covered
        ]
        ratio, k = min(table)
        picks.append(k)
        covered |= inst.sets[k]
        tracer.log_event(
            "set_cover_round",
            f"pick S{k + 1} ({format_link(inst.provenance[k])}) at ratio {ratio:g}",
            {"pick": k + 1, "ratio": ratio, "covered": sorted(covered)},
        )
    return picks


def backedge_solve(
    sys: StructuredSystem,
    P: Mapping[Link, float],
    project: bool = False,
    tracer: Optional[SolverLogger] = None,
) -> SolveReport:
    started = time.perf_counter()
    inst = reduce_to_set_cover(sys, P, project=project)
    try:
        picks = greedy_set_cover(inst, tracer)
    except Uncoverable as exc:
        raise Infeasible(
            "states " + ", ".join(f"x{s}" for s in exc.nodes) + " lie in no feedback-induced SCC"
        ) from exc

    feedback = inst.links_of(picks)
    certificate = has_no_sfm(sys, feedback)
    if not certificate.passed:
        raise AssumptionViolated("set cover yields a feedback set without SFMs", feedback.to_text())
    stats = SolveStats(
        iterations=len(picks),
        elapsed_s=time.perf_counter() - started,
        extra={"set_count": len(inst), "cover_weight": inst.weight_of(picks)},
    )
    return SolveReport(
        solver="backedge",
        feedback=feedback,
        cost=cost_of(feedback, P),
        certificate=certificate,
        stats=stats,
        trace=tracer.to_json() if isinstance(tracer, TraceLogger) else [],
    )
