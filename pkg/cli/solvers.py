"""Solver dispatch, including the ``auto`` route."""

from __future__ import annotations

import logging
from typing import Mapping, Optional

from approx.pipeline import solve_with_potential
from backedge.set_cover import backedge_solve, check_backedge
from core.errors import AssumptionViolated, Infeasible
from core.report import SolveReport
from core.system import Link, StructuredSystem
from hierarchy.arborescence import build_hierarchy
from hierarchy.dp import hierarchical_solve
from oracle.brute_force import brute_force_problem1
from utils.config_validator import OracleBudget, SolverConfig
from utils.logging_interface import SolverLogger

logger = logging.getLogger(__name__)

ALGORITHMS = ("auto", "potential", "backedge", "hierarchical", "oracle")


def _with_route(report: SolveReport, route: str) -> SolveReport:
    report.route = route
    return report


def solve_auto(
    sys: StructuredSystem,
    P: Mapping[Link, float],
    solver: SolverConfig,
    tracer: Optional[SolverLogger] = None,
) -> SolveReport:
    """Exact routes first: hierarchical, then back-edge set cover, then the potential algorithm."""

    try:
        build_hierarchy(sys, P)
    except AssumptionViolated as exc:
        logger.info("Hierarchical route unavailable: %s", exc)
    else:
        return _with_route(hierarchical_solve(sys, P, tracer), "hierarchical")

    if check_backedge(sys, P).passed:
        try:
            return _with_route(backedge_solve(sys, P, tracer=tracer), "backedge")
        except Infeasible as exc:
            logger.warning("Back-edge set cover is uncoverable (%s); falling back to the potential algorithm", exc)
            if tracer is not None:
                tracer.log_error("backedge_uncoverable", exc.reason, exc)
            return _with_route(solve_with_potential(sys, P, solver, tracer), "backedge->potential")
        except AssumptionViolated as exc:
            logger.info("Back-edge route unavailable: %s", exc)

    return _with_route(solve_with_potential(sys, P, solver, tracer), "potential")


def solve(
    sys: StructuredSystem,
    P: Mapping[Link, float],
    algo: str,
    solver: Optional[SolverConfig] = None,
    budget: Optional[OracleBudget] = None,
    project: bool = False,
    tracer: Optional[SolverLogger] = None,
) -> SolveReport:
    solver = solver or SolverConfig()
    if algo == "auto":
        return solve_auto(sys, P, solver, tracer=tracer)
    if algo == "potential":
        return _with_route(solve_with_potential(sys, P, solver, tracer), "potential")
    if algo == "backedge":
        return _with_route(backedge_solve(sys, P, project=project, tracer=tracer), "backedge")
    if algo == "hierarchical":
        return _with_route(hierarchical_solve(sys, P, tracer), "hierarchical")
    if algo == "oracle":
        return _with_route(brute_force_problem1(sys, P, budget), "oracle")
    raise ValueError(f"Unknown algorithm {algo!r}; expected one of {list(ALGORITHMS)}")
