"""End-to-end approximate feedback selection through the D_R cycle reduction."""

from __future__ import annotations

import logging
import time
from typing import Mapping, Optional

from core.errors import AssumptionViolated, Infeasible, Uncoverable
from core.report import SolveReport, SolveStats
from core.system import FeedbackSet, Link, StructuredSystem, cost_of
from reduction.condensed import condense, cycles_of
from sfm.certificate import has_no_sfm
from utils.config_validator import SolverConfig
from utils.logging_interface import SolverLogger, TraceLogger

from .potential import potential_solve

logger = logging.getLogger(__name__)


def solve_with_potential(
    sys: StructuredSystem,
    P: Mapping[Link, float],
    config: Optional[SolverConfig] = None,
    tracer: Optional[SolverLogger] = None,
) -> SolveReport:
    """Condense, list D_R cycles, run the potential algorithm and certify the result.

    Raises AssumptionViolated when B(A) has no perfect matching and
    Infeasible when some SCC lies on no D_R cycle.
    """

    config = config or SolverConfig()
    started = time.perf_counter()
    cg = condense(sys, P)
    cycles = cycles_of(cg, config.cycle_cap)
    try:
        outcome = potential_solve(
            cycles,
            cg.cost_map(),
            nodes=cg.nodes(),
            merge=config.merge_cycles,
            merge_equal=config.merge_equal_edge_sets,
            tracer=tracer,
        )
    except Uncoverable as exc:
        raise Infeasible(
            "SCCs " + ", ".join(f"N{a}" for a in exc.nodes) + " lie on no cycle of the reduced digraph"
        ) from exc

    feedback = FeedbackSet(outcome.edges)
    certificate = has_no_sfm(sys, feedback)
    if not certificate.passed:
        raise AssumptionViolated("cycle cover yields a feedback set without SFMs", feedback.to_text())

    stats = SolveStats(
        cycle_count=len(cycles),
        iterations=outcome.iterations,
        elapsed_s=time.perf_counter() - started,
        extra={
            "scc_count": cg.scc.count,
            "e_min_size": len(cg.e_min),
            "merged_cycle_count": len(outcome.cycles),
            "anytime_guard": outcome.guard_fired,
        },
    )
    logger.info("Potential route selected %d links at cost %.6g", len(feedback), outcome.cost)
    return SolveReport(
        solver="potential",
        feedback=feedback,
        cost=cost_of(feedback, P),
        certificate=certificate,
        stats=stats,
        trace=tracer.to_json() if isinstance(tracer, TraceLogger) else [],
    )
