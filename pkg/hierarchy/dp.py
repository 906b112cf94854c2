"""Bottom-up dynamic program for minimum-cost covers of hierarchical networks."""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Mapping, Optional, Tuple

from core.errors import AssumptionViolated, Infeasible
from core.report import SolveReport, SolveStats
from core.system import FeedbackSet, Link, StructuredSystem, cost_of, format_link
from sfm.certificate import has_no_sfm
from utils.logging_interface import NullLogger, SolverLogger, TraceLogger

from .arborescence import Hierarchy, build_hierarchy, forest_of

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DpCandidate:
    """One row of a node's min-table: a covering link plus the cost of its forest."""

    link: Link
    link_cost: float
    forest: Tuple[int, ...]
    forest_cost: float

    @property
    def total(self) -> float:
        return self.link_cost + self.forest_cost


@dataclass(frozen=True)
class DpCell:
    node: int
    label: str
    candidates: Tuple[DpCandidate, ...]
    best: DpCandidate
    edges: FrozenSet[Link]
    cost: float

    def to_json(self, h: Optional[Hierarchy] = None) -> Dict[str, Any]:
        def name(a: int) -> str:
            return h.label(a) if h is not None else f"N{a}"

        return {
            "node": self.label,
            "cost": self.cost,
            "choice": format_link(self.best.link),
            "edges": [format_link(e) for e in sorted(self.edges)],
            "table": [
                {
                    "link": format_link(c.link),
                    "link_cost": c.link_cost,
                    "forest": [name(a) for a in c.forest],
                    "forest_cost": c.forest_cost,
                    "total": c.total,
                }
                for c in self.candidates
            ],
        }


def dp_table(h: Hierarchy, tracer: Optional[SolverLogger] = None) -> Dict[int, DpCell]:
    """Solve every node from the deepest layer up; ties go to the smallest (input, output)."""

    tracer = tracer or NullLogger()
    cells: Dict[int, DpCell] = {}
    for row in reversed(h.layers()):
        for a in row:
            if not h.covering[a]:
                raise Infeasible(f"SCC {h.label(a)} (states {sorted(h.scc.members(a))}) has no covering feedback link")
            candidates = []
            for link in h.covering[a]:
                forest = tuple(forest_of(h, a, link))
                candidates.append(
                    DpCandidate(
                        link=link,
                        link_cost=h.costs[link],
                        forest=forest,
                        forest_cost=math.fsum(cells[r].cost for r in forest),
                    )
                )
            best = min(candidates, key=lambda c: (c.total, c.link))
            edges = frozenset({best.link}).union(*(cells[r].edges for r in best.forest))
            cells[a] = DpCell(
                node=a,
                label=h.label(a),
                candidates=tuple(candidates),
                best=best,
                edges=edges,
                cost=best.total,
            )
            logger.debug("c(Z(%s)) = %g via %s", h.label(a), best.total, format_link(best.link))
            tracer.log_event(
                "dp_cell",
                f"c(Z({h.label(a)})) = {best.total:g} via {format_link(best.link)}",
                cells[a].to_json(h),
            )
    return cells


def hierarchical_solve(
    sys: StructuredSystem,
    P: Mapping[Link, float],
    tracer: Optional[SolverLogger] = None,
) -> SolveReport:
    """Exact minimum-cost feedback selection for hierarchical networks; roots are solved independently."""

    started = time.perf_counter()
    h = build_hierarchy(sys, P)
    cells = dp_table(h, tracer)
    feedback = FeedbackSet(frozenset().union(*(cells[r].edges for r in h.roots)))
    certificate = has_no_sfm(sys, feedback)
    if not certificate.passed:
        raise AssumptionViolated("hierarchical cover yields a feedback set without SFMs", feedback.to_text())
    stats = SolveStats(
        iterations=len(cells),
        elapsed_s=time.perf_counter() - started,
        extra={"scc_count": h.scc.count, "layers": h.depth, "roots": len(h.roots)},
    )
    return SolveReport(
        solver="hierarchical",
        feedback=feedback,
        cost=cost_of(feedback, P),
        certificate=certificate,
        stats=stats,
        trace=tracer.to_json() if isinstance(tracer, TraceLogger) else [],
    )
