from utils.config_validator import OracleBudget

from .brute_force import (
    CoverSolution,
    brute_force_problem1,
    brute_force_problem2,
    cover_goal,
    optimal_edge_sets,
)
from .multiplicity import CoverProfile, MultiplicityReport, cover_multiplicities, multiplicities
from .search import SearchResult, subset_search
from .set_cover import brute_force_set_cover

__all__ = [
    "CoverProfile",
    "CoverSolution",
    "MultiplicityReport",
    "OracleBudget",
    "SearchResult",
    "brute_force_problem1",
    "brute_force_problem2",
    "brute_force_set_cover",
    "cover_goal",
    "cover_multiplicities",
    "multiplicities",
    "optimal_edge_sets",
    "subset_search",
]
